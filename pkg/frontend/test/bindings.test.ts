/** Binding fidelity: every bound call must reproduce the corresponding CLI
 * output byte-identically on the coefficient and fixture-table cases. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { EngineClient, EngineError } from "../src/client.js";
import { formatMatrix, formatTensors } from "../src/tensors.js";
import { runCli, startService, type RunningService } from "./helpers.js";

let service: RunningService;
let client: EngineClient;

beforeAll(async () => {
  service = await startService();
  client = new EngineClient(service.url);
});

afterAll(() => {
  service?.stop();
});

const COEFF_SETS: number[][] = [
  [0, 2, -2],
  [2, -2],
  [0, 1, -1],
  [1, -1],
  [0, 1, -1, 2, -2],
];

describe("binding fidelity", () => {
  it("coeffs calls match the CLI byte for byte on every coefficient set", async () => {
    for (const s of COEFF_SETS) {
      for (const theta of [0.5, -1.25, 2.0]) {
        const bound = await client.coeffs(s, theta);
        const cli = runCli(service.url, ["coeffs", `--s=${s.join(",")}`, "--theta", String(theta)]);
        expect(Buffer.from(bound.raw + "\n")).toEqual(cli);
        expect(bound.data.coefficients).toHaveLength(s.length);
      }
    }
  });

  it("the fixture table matches the CLI byte for byte and fully agrees", async () => {
    const bound = await client.table1();
    const cli = runCli(service.url, ["table1"]);
    expect(Buffer.from(bound.raw + "\n")).toEqual(cli);
    expect(bound.data.all_agree).toBe(true);
    expect(bound.data.rows.map((r) => r.S)).toEqual([
      [-2, 0, 2], [-2, 0, 2], [-2, 2], [-1, 1], [-1, 0, 1],
    ]);
  });

  it("transform calls match the CLI on fixture rows", async () => {
    const cases = [
      { ucc: "3^ 2^ 1 0", fragment: "4^ 2^ 1 0", theta: 1.0 },
      { ucc: "2^ 1^ 2 0", fragment: "3^ 1^ 4 0", theta: 0.35 },
    ];
    for (const c of cases) {
      const bound = await client.transform(c);
      const cli = runCli(service.url, [
        "transform", "--ucc", c.ucc, "--fragment", c.fragment, "--theta", String(c.theta),
      ]);
      expect(Buffer.from(bound.raw + "\n")).toEqual(cli);
    }
    const pauli = await client.transform({
      generator: "1.0 ZIII",
      hamiltonian: "0.5 XIII\n0.25 IZII",
      theta: 0.3,
    });
    const cliPauli = runCli(service.url, [
      "transform", "--generator", "1.0 ZIII",
      "--hamiltonian", "0.5 XIII;0.25 IZII", "--theta", "0.3",
    ]);
    expect(Buffer.from(pauli.raw + "\n")).toEqual(cliPauli);
  });

  it("classification matches the CLI and the fixture row values", async () => {
    const bound = await client.classifyUcc("3^ 2^ 1 0", "3^ 2^ 2 0");
    const cli = runCli(service.url, [
      "classify", "--ucc", "3^ 2^ 1 0", "--fragment", "3^ 2^ 2 0",
    ]);
    expect(Buffer.from(bound.raw + "\n")).toEqual(cli);
    expect(bound.data.S).toEqual([-1, 0, 1]);
    expect(bound.data.case_label).toBe("generic_offdiag");
  });

  it("tensor rotations round-trip through the array interop", async () => {
    const norb = 2;
    const m = new Float64Array(2 * norb * norb);
    m[2 * 1] = 0.4; // (0,1) and (1,0): a real swap-like generator
    m[2 * 2] = 0.4;
    const h = new Float64Array(2 * norb * norb);
    h[0] = 1.0;
    h[2 * 3] = 2.0;
    const g = new Float64Array(2 * norb ** 4);
    const matrixText = formatMatrix(norb, m);
    const tensorText = formatTensors({ norb, h, g });
    const bound = await client.rotateTensors(matrixText, tensorText, true);
    expect(bound.data.oracle_residual).not.toBeNull();
    expect(bound.data.oracle_residual!).toBeLessThan(1e-9);
    expect(bound.data.tensors.startsWith("norb 2")).toBe(true);
  });

  it("oracle verification is exposed with the same contract", async () => {
    const bound = await client.verify({ ucc: "1^ 0", fragment: "1^ 0", theta: 0.4 });
    expect(bound.data.ok).toBe(true);
    expect(bound.data.oracle_residual).toBeLessThan(1e-9);
  });

  it("engine errors surface with their kind", async () => {
    await expect(client.transform({ generator: "1.0 XQ", hamiltonian: "1.0 XX", theta: 0 }))
      .rejects.toMatchObject({ kind: "parse" });
    await expect(
      client.transform({ generator: "1.0 ZZ\n0.5 XX", hamiltonian: "1.0 XI", theta: 0 }),
    ).rejects.toMatchObject({ kind: "invariant" });
  });
});
