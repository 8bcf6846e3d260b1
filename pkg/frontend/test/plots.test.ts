import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { describe, expect, it } from "vitest";

import { parseBenchCsv, REQUIRED_COLUMNS } from "../src/csv";
import { main, runtimesFigures, sweepFigures } from "../src/index";
import { summarizeSpeedups } from "../src/stats";

const FIXTURE = path.join(__dirname, "fixtures", "bench12.csv");

function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "plots-"));
}

function smallCsv(): string {
  const header = REQUIRED_COLUMNS.join(",");
  const mk = (graph: string, mode: string, total: number) => {
    const base = Object.fromEntries(REQUIRED_COLUMNS.map((c) => [c, ""]));
    Object.assign(base, {
      algo: "tc", graph, n: "4", m: "6", t: "0.4", budget: "0.1",
      gallop_mode: mode, gallop_threshold: "5", workers: "1", seed: "0",
      result_summary: "tc=4", sim_time_total: String(total),
      sim_time_pnm_stream: "0", sim_time_pnm_random: String(total),
      sim_time_pum: "0", scu_hits: "0", scu_misses: "0",
      op_counts_json: "{}", wall_ms: "1",
    });
    return REQUIRED_COLUMNS.map((c) => base[c]).join(",");
  };
  return [
    header,
    mk("ga", "merge", 200), mk("ga", "auto", 100),
    mk("gb", "merge", 900), mk("gb", "auto", 300),
  ].join("\n") + "\n";
}

describe("runtimesFigures", () => {
  it("1 algorithm x 2 graphs x 2 variants -> one file with 4 bars", () => {
    const rows = parseBenchCsv(smallCsv());
    const files = runtimesFigures(rows);
    expect([...files.keys()]).toEqual(["runtimes_tc.svg"]);
    const svg = files.get("runtimes_tc.svg")!;
    expect(svg.match(/class="bar"/g)).toHaveLength(4);
    expect(svg).toContain("ga");
    expect(svg).toContain("merge");
  });

  it("is idempotent: identical input gives byte-identical SVG", () => {
    const rows = parseBenchCsv(fs.readFileSync(FIXTURE, "utf-8"));
    const a = runtimesFigures(rows).get("runtimes_tc.svg");
    const b = runtimesFigures(rows).get("runtimes_tc.svg");
    expect(a).toBe(b === undefined ? "unreachable" : b);
  });
});

describe("sweepFigures", () => {
  it("draws one polyline per variant with the swept axis", () => {
    const rows = parseBenchCsv(fs.readFileSync(FIXTURE, "utf-8"));
    const files = sweepFigures(rows, "t");
    const svg = files.get("sweep_tc.svg")!;
    expect(svg.match(/class="series"/g)!.length).toBe(3);
    expect(svg).toContain("vs t");
  });
});

describe("fixture acceptance", () => {
  it("12-row fixture: runtime figure, sweep figure, speedup table with gm 4.0", () => {
    const out = tmpDir();
    expect(main(["runtimes", "--in", FIXTURE, "--out", out])).toBe(0);
    expect(fs.existsSync(path.join(out, "runtimes_tc.svg"))).toBe(true);
    expect(main(["sweep", "--in", FIXTURE, "--out", out, "--x", "t"])).toBe(0);
    expect(fs.existsSync(path.join(out, "sweep_tc.svg"))).toBe(true);
    expect(main(["speedups", "--in", FIXTURE, "--out", out])).toBe(0);
    const table = fs.readFileSync(path.join(out, "speedups.txt"), "utf-8");
    expect(table).toContain("geometric-mean-of-speedups: 4.0000");
    const rows = parseBenchCsv(fs.readFileSync(FIXTURE, "utf-8"));
    const summary = summarizeSpeedups(rows);
    expect(summary.entries.map((e) => e.speedup).sort()).toEqual([2, 4, 8]);
    expect(summary.geometricMean).toBeCloseTo(4.0, 12);
  });

  it("re-running produces byte-identical files", () => {
    const out1 = tmpDir();
    const out2 = tmpDir();
    main(["runtimes", "--in", FIXTURE, "--out", out1]);
    main(["runtimes", "--in", FIXTURE, "--out", out2]);
    const a = fs.readFileSync(path.join(out1, "runtimes_tc.svg"));
    const b = fs.readFileSync(path.join(out2, "runtimes_tc.svg"));
    expect(a.equals(b)).toBe(true);
  });
});

describe("cli failure modes", () => {
  it("missing flags and unknown commands exit 1", () => {
    expect(main([])).toBe(1);
    expect(main(["runtimes"])).toBe(1);
    expect(main(["nope", "--in", "x", "--out", "y"])).toBe(1);
    expect(main(["runtimes", "--in", FIXTURE, "--out", tmpDir(), "--fmt", "png"])).toBe(1);
  });

  it("malformed csv exits 2", () => {
    const bad = path.join(tmpDir(), "bad.csv");
    fs.writeFileSync(bad, "algo,graph\ntc\n");
    expect(main(["runtimes", "--in", bad, "--out", tmpDir()])).toBe(2);
  });
});
