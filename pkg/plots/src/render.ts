/**
 * The three figure renderers.
 *
 * Each renderer validates its input schema first, builds a plain data
 * model, and only then emits SVG; a malformed table never produces a
 * partial figure. Rendering is a pure function of (table bytes, recipe).
 */

import { numericColumn, requireColumns, SchemaError, Table } from './csv.js';
import {
    ASYMPTOTE_COLOR,
    CHART_CURVE_COLOR,
    CHART_SURFACE_COLOR,
    CHART_WORLDLINE_COLOR,
    FigureRecipe,
    REFERENCE_COLOR,
} from './recipes.js';
import {
    decadeTicks,
    document as svgDocument,
    fmt,
    line,
    linearScale,
    linearTicks,
    log10Scale,
    polyline,
    Scale,
    text,
    tickLabel,
} from './svg.js';

const TWIN_COLUMNS = ['aT', 'T_over_T0', 'sigma_over_T0', 'omega_T0', 'P_A', 'P_A_err',
    'P_B', 'P_B_err', 'ratio', 'classical_ratio', 'converged', 'warnings'];
const DEVIATION_COLUMNS = ['T_over_T0', 'sigma_over_T0', 'omega_T0', 'alpha', 'converged'];
const CHART_COLUMNS = ['tau', 'X', 't', 'x'];

const PANEL = { width: 420, height: 320, left: 70, top: 44, right: 18, bottom: 52 };

// ── data models ────────────────────────────────────────────────────────────

export interface Series {
    sigma: number;
    points: Array<[number, number]>;
}

export interface TwinPanel {
    aT: number;
    classical: number;
    series: Series[];
}

export function buildTwinModel(table: Table): TwinPanel[] {
    requireColumns(table, TWIN_COLUMNS);
    const aT = numericColumn(table, 'aT');
    const T = numericColumn(table, 'T_over_T0');
    const sigma = numericColumn(table, 'sigma_over_T0');
    const ratio = numericColumn(table, 'ratio');
    const classical = numericColumn(table, 'classical_ratio');

    const panels = new Map<number, TwinPanel>();
    for (let k = 0; k < aT.length; k += 1) {
        let panel = panels.get(aT[k]);
        if (!panel) {
            panel = { aT: aT[k], classical: classical[k], series: [] };
            panels.set(aT[k], panel);
        }
        let series = panel.series.find((s) => s.sigma === sigma[k]);
        if (!series) {
            series = { sigma: sigma[k], points: [] };
            panel.series.push(series);
        }
        series.points.push([T[k], ratio[k]]);
    }
    const out = [...panels.values()].sort((a, b) => a.aT - b.aT);
    for (const panel of out) {
        panel.series.sort((a, b) => a.sigma - b.sigma);
        for (const s of panel.series) s.points.sort((a, b) => a[0] - b[0]);
    }
    return out;
}

export function buildDeviationModel(table: Table): Series[] {
    requireColumns(table, DEVIATION_COLUMNS);
    const T = numericColumn(table, 'T_over_T0');
    const sigma = numericColumn(table, 'sigma_over_T0');
    const alpha = numericColumn(table, 'alpha');
    const series = new Map<number, Series>();
    for (let k = 0; k < T.length; k += 1) {
        if (alpha[k] <= 0) throw new SchemaError(`column 'alpha' row ${k + 1} must be positive for the log scale`);
        let s = series.get(sigma[k]);
        if (!s) {
            s = { sigma: sigma[k], points: [] };
            series.set(sigma[k], s);
        }
        s.points.push([T[k], alpha[k]]);
    }
    const out = [...series.values()].sort((a, b) => a.sigma - b.sigma);
    for (const s of out) s.points.sort((a, b) => a[0] - b[0]);
    return out;
}

export interface ChartPanel {
    /** rest surfaces: one (t, x) run per proper-time grid value */
    surfaces: Array<{ tau: number; points: Array<[number, number]> }>;
    /** comoving-position curves: one (t, x) run per chart offset X */
    curves: Array<{ X: number; points: Array<[number, number]> }>;
}

export function buildChartModel(table: Table): ChartPanel {
    requireColumns(table, CHART_COLUMNS);
    const tau = numericColumn(table, 'tau');
    const X = numericColumn(table, 'X');
    const t = numericColumn(table, 't');
    const x = numericColumn(table, 'x');

    const byTau = new Map<number, Array<[number, number, number]>>();
    const byX = new Map<number, Array<[number, number, number]>>();
    for (let k = 0; k < tau.length; k += 1) {
        if (!byTau.has(tau[k])) byTau.set(tau[k], []);
        byTau.get(tau[k])!.push([X[k], t[k], x[k]]);
        if (!byX.has(X[k])) byX.set(X[k], []);
        byX.get(X[k])!.push([tau[k], t[k], x[k]]);
    }
    const surfaces = [...byTau.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([tv, rows]) => ({
            tau: tv,
            points: rows.sort((a, b) => a[0] - b[0]).map(([, tt, xx]) => [tt, xx] as [number, number]),
        }));
    const curves = [...byX.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([xv, rows]) => ({
            X: xv,
            points: rows.sort((a, b) => a[0] - b[0]).map(([, tt, xx]) => [tt, xx] as [number, number]),
        }));
    return { surfaces, curves };
}

// ── shared axis furniture ──────────────────────────────────────────────────

function panelOrigin(index: number): [number, number] {
    return [index * (PANEL.left + PANEL.width + PANEL.right), 0];
}

function panelFrame(ox: number, oy: number, xs: Scale, ys: Scale,
                    xTicks: number[], yTicks: number[],
                    xLabel: string, yLabel: string, title: string): string[] {
    const x0 = ox + PANEL.left;
    const y0 = oy + PANEL.top;
    const x1 = x0 + PANEL.width;
    const y1 = y0 + PANEL.height;
    const body: string[] = [];
    body.push(`<rect x="${fmt(x0)}" y="${fmt(y0)}" width="${PANEL.width}" height="${PANEL.height}" fill="none" stroke="black" stroke-width="1"/>`);
    for (const v of xTicks) {
        const px = xs(v);
        body.push(line(px, y1, px, y1 + 5, 'stroke="black" stroke-width="1"'));
        body.push(text(px, y1 + 18, tickLabel(v), 'text-anchor="middle"'));
    }
    for (const v of yTicks) {
        const py = ys(v);
        body.push(line(x0 - 5, py, x0, py, 'stroke="black" stroke-width="1"'));
        body.push(text(x0 - 8, py + 4, tickLabel(v), 'text-anchor="end"'));
    }
    body.push(text((x0 + x1) / 2, y1 + 38, xLabel, 'text-anchor="middle"'));
    body.push(text(ox + 16, (y0 + y1) / 2, yLabel,
        `text-anchor="middle" transform="rotate(-90 ${fmt(ox + 16)} ${fmt((y0 + y1) / 2)})"`));
    body.push(text((x0 + x1) / 2, y0 - 12, title, 'text-anchor="middle" font-weight="bold"'));
    return body;
}

function padDomain(lo: number, hi: number, frac = 0.06): [number, number] {
    const span = hi - lo || Math.abs(hi) || 1;
    return [lo - frac * span, hi + frac * span];
}

// ── renderers ──────────────────────────────────────────────────────────────

export function renderTwinFigure(tables: Table[], recipe: FigureRecipe): string {
    if (tables.length !== 1) throw new SchemaError('twin figure expects exactly one input CSV');
    const panels = buildTwinModel(tables[0]);
    const width = panels.length * (PANEL.left + PANEL.width + PANEL.right);
    const height = PANEL.top + PANEL.height + PANEL.bottom;
    const body: string[] = [];

    panels.forEach((panel, idx) => {
        const [ox, oy] = panelOrigin(idx);
        const xsVals = panel.series.flatMap((s) => s.points.map((p) => p[0]));
        const ysVals = panel.series.flatMap((s) => s.points.map((p) => p[1])).concat(panel.classical);
        const xs = linearScale(
            [Math.min(...xsVals), Math.max(...xsVals)],
            [ox + PANEL.left, ox + PANEL.left + PANEL.width],
        );
        const ys = linearScale(
            padDomain(Math.min(...ysVals), Math.max(...ysVals)),
            [oy + PANEL.top + PANEL.height, oy + PANEL.top],
        );
        body.push(`<g data-panel-aT="${panel.aT}" data-classical="${panel.classical}">`);
        body.push(...panelFrame(ox, oy, xs, ys, linearTicks(xs.domain), linearTicks(ys.domain),
            recipe.xLabel, recipe.yLabel, `aT = ${tickLabel(panel.aT)}`));
        // classical asymptote: dashed horizontal reference
        const yc = ys(panel.classical);
        body.push(line(xs.range[0], yc, xs.range[1], yc,
            `stroke="${ASYMPTOTE_COLOR}" stroke-width="1" stroke-dasharray="6 4" class="asymptote"`));
        body.push(text(xs.range[1] - 4, yc - 5, tickLabel(panel.classical),
            `text-anchor="end" fill="${ASYMPTOTE_COLOR}"`));
        panel.series.forEach((s, k) => {
            const color = recipe.seriesColors[k % recipe.seriesColors.length];
            body.push(polyline(s.points.map(([px, py]) => [xs(px), ys(py)]),
                `fill="none" stroke="${color}" stroke-width="1.5" data-sigma="${s.sigma}"`));
            body.push(text(ox + PANEL.left + 10, oy + PANEL.top + 16 + 14 * k,
                `sigma/T0 = ${tickLabel(s.sigma)}`, `fill="${color}"`));
        });
        body.push('</g>');
    });
    return svgDocument(width, height, body);
}

export function renderDeviationFigure(tables: Table[], recipe: FigureRecipe): string {
    if (tables.length !== 1) throw new SchemaError('deviation figure expects exactly one input CSV');
    const series = buildDeviationModel(tables[0]);
    const width = PANEL.left + PANEL.width + PANEL.right;
    const height = PANEL.top + PANEL.height + PANEL.bottom;
    const body: string[] = [];

    const xsVals = series.flatMap((s) => s.points.map((p) => p[0]));
    const ysVals = series.flatMap((s) => s.points.map((p) => p[1])).concat([0.01, 0.05]);
    const xs = linearScale([Math.min(...xsVals), Math.max(...xsVals)],
        [PANEL.left, PANEL.left + PANEL.width]);
    const ys = log10Scale([Math.min(...ysVals) / 1.5, Math.max(...ysVals) * 1.5],
        [PANEL.top + PANEL.height, PANEL.top]);

    body.push('<g data-kind="deviation">');
    body.push(...panelFrame(0, 0, xs, ys, linearTicks(xs.domain), decadeTicks(ys.domain),
        recipe.xLabel, recipe.yLabel, 'inertial clock vs ideal rate'));
    for (const [ref, label] of [[0.01, '1%'], [0.05, '5%']] as Array<[number, string]>) {
        const py = ys(ref);
        body.push(line(xs.range[0], py, xs.range[1], py,
            `stroke="${REFERENCE_COLOR}" stroke-width="1" stroke-dasharray="3 3" class="reference" data-level="${ref}"`));
        body.push(text(xs.range[1] - 4, py - 4, label, `text-anchor="end" fill="${REFERENCE_COLOR}"`));
    }
    series.forEach((s, k) => {
        const color = recipe.seriesColors[k % recipe.seriesColors.length];
        body.push(polyline(s.points.map(([px, py]) => [xs(px), ys(py)]),
            `fill="none" stroke="${color}" stroke-width="1.5" data-sigma="${s.sigma}"`));
        body.push(text(PANEL.left + PANEL.width - 10, PANEL.top + 16 + 14 * k,
            `sigma/T0 = ${tickLabel(s.sigma)}`, `text-anchor="end" fill="${color}"`));
    });
    body.push('</g>');
    return svgDocument(width, height, body);
}

export function renderFermiChart(tables: Table[], recipe: FigureRecipe): string {
    if (tables.length < 1) throw new SchemaError('chart figure expects at least one input CSV');
    const models = tables.map(buildChartModel);
    const width = models.length * (PANEL.left + PANEL.width + PANEL.right);
    const height = PANEL.top + PANEL.height + PANEL.bottom;
    const body: string[] = [];

    models.forEach((model, idx) => {
        const [ox, oy] = panelOrigin(idx);
        const all = model.curves.flatMap((c) => c.points);
        const xVals = all.map((p) => p[1]);
        const tVals = all.map((p) => p[0]);
        const xs = linearScale(padDomain(Math.min(...xVals), Math.max(...xVals)),
            [ox + PANEL.left, ox + PANEL.left + PANEL.width]);
        const ys = linearScale(padDomain(Math.min(...tVals), Math.max(...tVals)),
            [oy + PANEL.top + PANEL.height, oy + PANEL.top]);
        const maxX = Math.max(...model.curves.map((c) => Math.abs(c.X)), 1e-300);
        const weight = (X: number) => Math.exp(-0.5 * (3 * X / maxX) ** 2);
        const span = model.curves.length > 1
            ? tickLabel(2 * maxX) : '0';

        body.push(`<g data-panel="${idx}" data-chart-halfwidth="${maxX}">`);
        body.push(...panelFrame(ox, oy, xs, ys, linearTicks(xs.domain), linearTicks(ys.domain),
            recipe.xLabel, recipe.yLabel, `chart span ${span}`));
        // interaction region: Gaussian-weighted fill between neighboring curves
        for (let k = 0; k + 1 < model.curves.length; k += 1) {
            const a = model.curves[k];
            const b = model.curves[k + 1];
            const mid = 0.5 * (a.X + b.X);
            const ring = a.points.map(([tt, xx]) => [xs(xx), ys(tt)] as [number, number])
                .concat([...b.points].reverse().map(([tt, xx]) => [xs(xx), ys(tt)] as [number, number]));
            const pts = ring.map(([px, py]) => `${fmt(px)},${fmt(py)}`).join(' ');
            body.push(`<polygon points="${pts}" fill="${CHART_CURVE_COLOR}" opacity="${(0.30 * weight(mid)).toFixed(3)}" stroke="none"/>`);
        }
        for (const surf of model.surfaces) {
            body.push(polyline(surf.points.map(([tt, xx]) => [xs(xx), ys(tt)]),
                `fill="none" stroke="${CHART_SURFACE_COLOR}" stroke-width="0.75" data-tau="${surf.tau}"`));
        }
        for (const curve of model.curves) {
            const isCenter = curve.X === 0;
            const color = isCenter ? CHART_WORLDLINE_COLOR : CHART_CURVE_COLOR;
            const sw = isCenter ? '2' : '1';
            const op = isCenter ? '1' : (0.35 + 0.65 * weight(curve.X)).toFixed(3);
            body.push(polyline(curve.points.map(([tt, xx]) => [xs(xx), ys(tt)]),
                `fill="none" stroke="${color}" stroke-width="${sw}" opacity="${op}" data-X="${curve.X}"`));
        }
        body.push('</g>');
    });
    return svgDocument(width, height, body);
}

export function render(tables: Table[], recipe: FigureRecipe): string {
    switch (recipe.kind) {
        case 'twin':
            return renderTwinFigure(tables, recipe);
        case 'deviation':
            return renderDeviationFigure(tables, recipe);
        case 'chart':
            return renderFermiChart(tables, recipe);
        default:
            throw new SchemaError(`unknown figure kind '${recipe.kind as string}'`);
    }
}
