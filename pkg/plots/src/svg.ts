/**
 * Deterministic SVG emission.
 *
 * Every coordinate is formatted with a fixed number of decimals and the
 * renderer never consults clocks, locales or randomness, so identical
 * inputs produce byte-identical files.
 */

export function fmt(v: number): string {
    const s = v.toFixed(2);
    return s === '-0.00' ? '0.00' : s;
}

export function esc(text: string): string {
    return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');
}

export interface Scale {
    (v: number): number;
    domain: [number, number];
    range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const f = ((v: number) => r0 + ((v - d0) / (d1 - d0)) * (r1 - r0)) as Scale;
    f.domain = domain;
    f.range = range;
    return f;
}

export function log10Scale(domain: [number, number], range: [number, number]): Scale {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const l0 = Math.log10(d0);
    const l1 = Math.log10(d1);
    const f = ((v: number) => r0 + ((Math.log10(v) - l0) / (l1 - l0)) * (r1 - r0)) as Scale;
    f.domain = domain;
    f.range = range;
    return f;
}

export function polyline(points: Array<[number, number]>, attrs: string): string {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(' ');
    return `<polyline points="${pts}" ${attrs}/>`;
}

export function line(x1: number, y1: number, x2: number, y2: number, attrs: string): string {
    return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`;
}

export function text(x: number, y: number, content: string, attrs = ''): string {
    return `<text x="${fmt(x)}" y="${fmt(y)}" ${attrs}>${esc(content)}</text>`;
}

export function document(width: number, height: number, body: string[]): string {
    return [
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
        `<rect width="${width}" height="${height}" fill="white"/>`,
        ...body,
        '</svg>',
        '',
    ].join('\n');
}

/** Evenly spaced linear ticks (deterministic, fixed count). */
export function linearTicks(domain: [number, number], count = 5): number[] {
    const [lo, hi] = domain;
    return Array.from({ length: count }, (_, i) => lo + (i * (hi - lo)) / (count - 1));
}

/** Decade ticks covering a log domain. */
export function decadeTicks(domain: [number, number]): number[] {
    const lo = Math.ceil(Math.log10(domain[0]) - 1e-9);
    const hi = Math.floor(Math.log10(domain[1]) + 1e-9);
    const out: number[] = [];
    for (let e = lo; e <= hi; e += 1) out.push(10 ** e);
    return out;
}

export function tickLabel(v: number): string {
    if (v !== 0 && (Math.abs(v) < 1e-2 || Math.abs(v) >= 1e4)) return v.toExponential(0);
    return Number(v.toPrecision(4)).toString();
}
