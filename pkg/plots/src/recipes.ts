/**
 * Figure recipes: what to read, how to style it, where to write it.
 *
 * Colors and dash patterns are fixed constants rather than inferred at
 * render time, so regenerating a figure from the same CSV reproduces it
 * byte for byte.
 */

export type FigureKind = 'twin' | 'deviation' | 'chart';

export interface FigureRecipe {
    kind: FigureKind;
    inputs: string[];
    output: string;
    xLabel: string;
    yLabel: string;
    /** one stroke color per clock size, smallest first */
    seriesColors: string[];
}

export const SERIES_COLORS = ['#4e79a7', '#f28e2b', '#e15759', '#76b7b2', '#59a14f'];
export const ASYMPTOTE_COLOR = '#444444';
export const REFERENCE_COLOR = '#888888';
export const CHART_SURFACE_COLOR = '#999999';
export const CHART_CURVE_COLOR = '#5e3c99';
export const CHART_WORLDLINE_COLOR = '#2a1a5e';

const AXIS_LABELS: Record<FigureKind, [string, string]> = {
    twin: ['T / T0', 'P_B / P_A'],
    deviation: ['T / T0', 'relative deviation from ideal rate'],
    chart: ['x', 't'],
};

export function defaultRecipe(kind: FigureKind, inputs: string[], output: string): FigureRecipe {
    const [xLabel, yLabel] = AXIS_LABELS[kind];
    return { kind, inputs, output, xLabel, yLabel, seriesColors: SERIES_COLORS };
}
