/**
 * Strict CSV reading for the bench output schema.
 */

export const REQUIRED_COLUMNS = [
  "algo", "graph", "n", "m", "param_k", "param_tau", "param_sigma",
  "param_eps", "measure", "t", "budget", "gallop_mode", "gallop_threshold",
  "workers", "seed", "result_summary", "sim_time_total",
  "sim_time_pnm_stream", "sim_time_pnm_random", "sim_time_pum",
  "scu_hits", "scu_misses", "op_counts_json", "wall_ms",
] as const;

export interface BenchRow {
  algo: string;
  graph: string;
  variant: string; // the gallop_mode column labels the run variant
  t: number;
  gallopThreshold: number;
  workers: number;
  resultSummary: string;
  simTimeTotal: number;
  raw: Record<string, string>;
}

/** Split one CSV line honoring double-quoted fields. */
export function splitLine(line: string): string[] {
  const out: string[] = [];
  let field = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"' && line[i + 1] === '"') {
        field += '"';
        i++;
      } else if (ch === '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      out.push(field);
      field = "";
    } else {
      field += ch;
    }
  }
  out.push(field);
  return out;
}

export function parseBenchCsv(content: string): BenchRow[] {
  const lines = content.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("empty input: no CSV header found");
  }
  const header = splitLine(lines[0]);
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new Error(`missing required columns: ${missing.join(", ")}`);
  }
  const idx = new Map(header.map((h, i) => [h, i] as const));
  const rows: BenchRow[] = [];
  for (let ln = 1; ln < lines.length; ln++) {
    const fields = splitLine(lines[ln]);
    if (fields.length !== header.length) {
      throw new Error(
        `line ${ln + 1}: expected ${header.length} fields, got ${fields.length}`,
      );
    }
    const get = (c: string) => fields[idx.get(c)!];
    const simTimeTotal = Number(get("sim_time_total"));
    if (!Number.isFinite(simTimeTotal)) {
      throw new Error(`line ${ln + 1}: sim_time_total is not a number`);
    }
    const raw: Record<string, string> = {};
    header.forEach((h, i) => {
      raw[h] = fields[i];
    });
    rows.push({
      algo: get("algo"),
      graph: get("graph"),
      variant: get("gallop_mode"),
      t: Number(get("t")),
      gallopThreshold: Number(get("gallop_threshold")),
      workers: Number(get("workers")),
      resultSummary: get("result_summary"),
      simTimeTotal,
      raw,
    });
  }
  if (rows.length === 0) {
    throw new Error("empty input: CSV has a header but no data rows");
  }
  return rows;
}
