/**
 * CSV parsing and schema validation for the sweep-table contracts.
 *
 * Validation always runs before any drawing: a malformed file raises
 * SchemaError naming the offending column and no output is produced.
 */

export class SchemaError extends Error {}

export interface Table {
    columns: string[];
    rows: string[][];
}

/** Minimal RFC-4180 parser (quoted fields, escaped quotes, \n endings). */
export function parseCsv(text: string): Table {
    const rows: string[][] = [];
    let field = '';
    let row: string[] = [];
    let inQuotes = false;
    let i = 0;
    while (i < text.length) {
        const c = text[i];
        if (inQuotes) {
            if (c === '"') {
                if (text[i + 1] === '"') { field += '"'; i += 2; continue; }
                inQuotes = false; i += 1; continue;
            }
            field += c; i += 1; continue;
        }
        if (c === '"') { inQuotes = true; i += 1; continue; }
        if (c === ',') { row.push(field); field = ''; i += 1; continue; }
        if (c === '\n') { row.push(field); rows.push(row); row = []; field = ''; i += 1; continue; }
        if (c === '\r') { i += 1; continue; }
        field += c; i += 1;
    }
    if (field.length > 0 || row.length > 0) { row.push(field); rows.push(row); }
    if (rows.length === 0) throw new SchemaError('empty CSV: no header row');
    return { columns: rows[0], rows: rows.slice(1) };
}

/** Assert the table carries exactly the expected leading columns. */
export function requireColumns(table: Table, expected: string[]): void {
    for (const name of expected) {
        if (!table.columns.includes(name)) {
            throw new SchemaError(`missing required column '${name}'`);
        }
    }
    if (table.rows.length === 0) {
        throw new SchemaError('CSV has a header but no data rows');
    }
    for (const [k, row] of table.rows.entries()) {
        if (row.length !== table.columns.length) {
            throw new SchemaError(`row ${k + 1} has ${row.length} fields, expected ${table.columns.length}`);
        }
    }
}

/** Extract one named column as numbers, failing loudly on non-numeric cells. */
export function numericColumn(table: Table, name: string): number[] {
    const idx = table.columns.indexOf(name);
    if (idx < 0) throw new SchemaError(`missing required column '${name}'`);
    return table.rows.map((row, k) => {
        const v = Number(row[idx]);
        if (!Number.isFinite(v)) {
            throw new SchemaError(`column '${name}' row ${k + 1} is not a finite number: '${row[idx]}'`);
        }
        return v;
    });
}
