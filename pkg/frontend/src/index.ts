#!/usr/bin/env node
/**
 * Figures and speedup tables over bench CSV output.
 *
 * Usage:
 *   plots runtimes --in results.csv --out figs [--fmt svg]
 *   plots sweep    --in sweep.csv   --out figs [--x t] [--algo tc]
 *   plots speedups --in results.csv --out figs
 */
import * as fs from "fs";
import * as path from "path";

import { BenchRow, parseBenchCsv } from "./csv";
import { renderSpeedupTable, summarizeSpeedups } from "./stats";
import { BarGroup, groupedBarChart, SweepSeries, sweepLineChart } from "./svg";

interface Options {
  input: string;
  outDir: string;
  fmt: string;
  xKey: string;
  algo: string | null;
}

function parseArgs(argv: string[]): { command: string; opts: Options } {
  const [command, ...rest] = argv;
  if (!command || !["runtimes", "sweep", "speedups"].includes(command)) {
    throw new UsageFailure(
      "usage: plots runtimes|sweep|speedups --in CSV --out DIR [--fmt svg] [--x t] [--algo NAME]",
    );
  }
  const opts: Options = { input: "", outDir: "", fmt: "svg", xKey: "t", algo: null };
  for (let i = 0; i < rest.length; i++) {
    const flag = rest[i];
    const val = rest[i + 1];
    if (val === undefined) throw new UsageFailure(`missing value for ${flag}`);
    switch (flag) {
      case "--in":
        opts.input = val;
        break;
      case "--out":
        opts.outDir = val;
        break;
      case "--fmt":
        opts.fmt = val;
        break;
      case "--x":
        opts.xKey = val;
        break;
      case "--algo":
        opts.algo = val;
        break;
      default:
        throw new UsageFailure(`unknown flag ${flag}`);
    }
    i++;
  }
  if (!opts.input || !opts.outDir) {
    throw new UsageFailure("--in and --out are required");
  }
  if (opts.fmt !== "svg") {
    throw new UsageFailure(
      `unsupported format ${opts.fmt}: this tool emits svg (png would need a rasterizer)`,
    );
  }
  return { command, opts };
}

class UsageFailure extends Error {}

function readRows(opts: Options): BenchRow[] {
  const content = fs.readFileSync(opts.input, "utf-8");
  let rows = parseBenchCsv(content);
  if (opts.algo) {
    rows = rows.filter((r) => r.algo === opts.algo);
    if (rows.length === 0) {
      throw new Error(`no rows for algo ${opts.algo}`);
    }
  }
  return rows;
}

export function runtimesFigures(rows: BenchRow[]): Map<string, string> {
  const files = new Map<string, string>();
  const algos = [...new Set(rows.map((r) => r.algo))].sort();
  for (const algo of algos) {
    const sub = rows.filter((r) => r.algo === algo);
    const variants: string[] = [];
    for (const r of sub) if (!variants.includes(r.variant)) variants.push(r.variant);
    const graphs = [...new Set(sub.map((r) => r.graph))].sort();
    const groups: BarGroup[] = graphs.map((graph) => {
      const values = [];
      for (const variant of variants) {
        const times = sub
          .filter((r) => r.graph === graph && r.variant === variant)
          .map((r) => r.simTimeTotal);
        if (times.length === 0) continue;
        const mean = times.reduce((a, v) => a + v, 0) / times.length;
        values.push({ series: variant, value: mean });
      }
      return { label: graph, values };
    });
    files.set(
      `runtimes_${algo}.svg`,
      groupedBarChart(`${algo}: simulated time by graph and variant`, groups, variants),
    );
  }
  return files;
}

export function sweepFigures(rows: BenchRow[], xKey: string): Map<string, string> {
  const files = new Map<string, string>();
  const algos = [...new Set(rows.map((r) => r.algo))].sort();
  for (const algo of algos) {
    const sub = rows.filter((r) => r.algo === algo);
    const variants = [...new Set(sub.map((r) => r.variant))].sort();
    const series: SweepSeries[] = variants.map((variant) => ({
      name: variant,
      points: sub
        .filter((r) => r.variant === variant)
        .map((r) => ({ x: Number(r.raw[xKey]), y: r.simTimeTotal }))
        .sort((a, b) => a.x - b.x || a.y - b.y),
    }));
    for (const s of series) {
      if (s.points.some((p) => !Number.isFinite(p.x))) {
        throw new Error(`sweep axis ${xKey} has non-numeric values`);
      }
    }
    files.set(
      `sweep_${algo}.svg`,
      sweepLineChart(`${algo}: simulated time vs ${xKey}`, xKey, series),
    );
  }
  return files;
}

function writeFiles(files: Map<string, string>, outDir: string): void {
  fs.mkdirSync(outDir, { recursive: true });
  for (const [name, content] of [...files.entries()].sort()) {
    fs.writeFileSync(path.join(outDir, name), content);
    process.stdout.write(`wrote ${path.join(outDir, name)}\n`);
  }
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs(argv);
  } catch (e) {
    process.stderr.write(`${(e as Error).message}\n`);
    return 1;
  }
  const { command, opts } = parsed;
  try {
    const rows = readRows(opts);
    if (command === "runtimes") {
      writeFiles(runtimesFigures(rows), opts.outDir);
    } else if (command === "sweep") {
      writeFiles(sweepFigures(rows, opts.xKey), opts.outDir);
    } else {
      const summary = summarizeSpeedups(rows);
      for (const w of summary.warnings) {
        process.stderr.write(`warning: ${w}\n`);
      }
      const table = renderSpeedupTable(summary);
      fs.mkdirSync(opts.outDir, { recursive: true });
      const outPath = path.join(opts.outDir, "speedups.txt");
      fs.writeFileSync(outPath, table);
      process.stdout.write(table);
      process.stdout.write(`wrote ${outPath}\n`);
    }
    return 0;
  } catch (e) {
    process.stderr.write(`error: ${(e as Error).message}\n`);
    return 2;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
