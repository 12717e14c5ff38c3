import { existsSync, mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";

const FIXTURES = join(__dirname, "fixtures");

describe("cli", () => {
  it("renders a figure end to end", () => {
    const out = join(mkdtempSync(join(tmpdir(), "figcli-")), "fig.svg");
    const code = main([
      "--kind", "separation_curves",
      "--input", join(FIXTURES, "fig1_gap001.csv"),
      "--input", join(FIXTURES, "fig1_gap1.csv"),
      "--series-column", "gap_sigma",
      "--output", out,
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
  });

  it("reports missing flags", () => {
    expect(main(["--kind", "separation_curves"])).toBe(2);
  });

  it("rejects unknown kinds", () => {
    const code = main([
      "--kind", "pie_chart",
      "--input", join(FIXTURES, "fig1_gap01.csv"),
      "--series-column", "gap_sigma",
      "--output", join(tmpdir(), "x.svg"),
    ]);
    expect(code).toBe(2);
  });

  it("maps schema failures to exit 2", () => {
    const code = main([
      "--kind", "separation_curves",
      "--input", join(FIXTURES, "fig1_gap01.csv"),
      "--series-column", "gap_tau",
      "--output", join(tmpdir(), "x.svg"),
    ]);
    expect(code).toBe(2);
  });

  it("prints usage on --help", () => {
    expect(main(["--help"])).toBe(0);
  });
});
