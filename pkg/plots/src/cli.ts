#!/usr/bin/env node
/**
 * render --kind <twin|deviation|chart> --in <csv> [--in <csv>] --out <svg>
 *
 * Exit codes: 0 rendered, 1 schema/data error, 2 usage error.
 */

import * as fs from 'node:fs';
import { parseCsv, SchemaError } from './csv.js';
import { defaultRecipe, FigureKind } from './recipes.js';
import { render } from './render.js';

function usage(): never {
    console.error('usage: render --kind <twin|deviation|chart> --in <csv> [--in <csv>] --out <svg>');
    process.exit(2);
}

export function main(argv: string[]): number {
    let kind: string | null = null;
    const inputs: string[] = [];
    let output: string | null = null;
    for (let i = 0; i < argv.length; i += 1) {
        const a = argv[i];
        if (a === '--kind') kind = argv[++i];
        else if (a === '--in') inputs.push(argv[++i]);
        else if (a === '--out') output = argv[++i];
        else usage();
    }
    if (!kind || !output || inputs.length === 0) usage();
    if (!['twin', 'deviation', 'chart'].includes(kind)) usage();

    try {
        const tables = inputs.map((p) => parseCsv(fs.readFileSync(p, 'utf-8')));
        const svg = render(tables, defaultRecipe(kind as FigureKind, inputs, output));
        fs.writeFileSync(output, svg, 'utf-8');
        console.log(`wrote ${output}`);
        return 0;
    } catch (err) {
        if (err instanceof SchemaError) {
            console.error(`schema error: ${err.message}`);
            return 1;
        }
        if (err instanceof Error && 'code' in err) {
            console.error(`io error: ${err.message}`);
            return 1;
        }
        throw err;
    }
}

process.exit(main(process.argv.slice(2)));
