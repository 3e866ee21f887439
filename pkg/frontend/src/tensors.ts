/** Array interop for the engine's tensor text format.
 *
 * Tensors cross the boundary as contiguous row-major Float64Arrays with an
 * explicit orbital count; complex entries interleave [re, im] pairs.  The
 * text format is the engine's: a `norb N` header followed by
 * `<value> p q r s` lines with 1-based indices (one-body entries carry
 * r = s = 0).
 */

export interface ComplexTensors {
  /** orbital count N */
  norb: number;
  /** one-body coefficients: interleaved re/im, length 2*N*N, row-major */
  h: Float64Array;
  /** two-body coefficients: interleaved re/im, length 2*N^4, row-major */
  g: Float64Array;
}

function formatValue(re: number, im: number): string {
  if (im === 0) return formatFloat(re);
  const sign = im >= 0 ? "+" : "-";
  return `${formatFloat(re)}${sign}${formatFloat(Math.abs(im))}j`;
}

/** Shortest round-trip decimal, matching the double exactly when parsed. */
export function formatFloat(x: number): string {
  if (Number.isInteger(x) && Math.abs(x) < 1e16) {
    return `${x}.0`;
  }
  return String(x);
}

function parseValue(token: string): [number, number] {
  // forms: "1.5", "-2e-3", "0.5+0.25j", "0.5-0.25j"
  if (!token.endsWith("j")) return [Number(token), 0];
  const body = token.slice(0, -1);
  for (let i = body.length - 1; i > 0; i--) {
    const ch = body[i];
    if ((ch === "+" || ch === "-") && body[i - 1] !== "e" && body[i - 1] !== "E") {
      const re = Number(body.slice(0, i));
      const im = Number(body.slice(i));
      return [re, im];
    }
  }
  return [0, Number(body)];
}

export function formatTensors(t: ComplexTensors): string {
  const n = t.norb;
  if (t.h.length !== 2 * n * n || t.g.length !== 2 * n ** 4) {
    throw new Error("tensor buffer lengths do not match norb");
  }
  const lines = [`norb ${n}`];
  for (let p = 0; p < n; p++) {
    for (let q = 0; q < n; q++) {
      const k = 2 * (p * n + q);
      const re = t.h[k];
      const im = t.h[k + 1];
      if (re !== 0 || im !== 0) lines.push(`${formatValue(re, im)} ${p + 1} ${q + 1} 0 0`);
    }
  }
  const n2 = n * n;
  for (let p = 0; p < n; p++) {
    for (let q = 0; q < n; q++) {
      for (let r = 0; r < n; r++) {
        for (let s = 0; s < n; s++) {
          const k = 2 * (((p * n + q) * n + r) * n + s);
          const re = t.g[k];
          const im = t.g[k + 1];
          if (re !== 0 || im !== 0) {
            lines.push(`${formatValue(re, im)} ${p + 1} ${q + 1} ${r + 1} ${s + 1}`);
          }
        }
      }
    }
  }
  return lines.join("\n");
}

export function parseTensors(text: string): ComplexTensors {
  const lines = text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0 && !l.startsWith("#"));
  if (lines.length === 0 || !lines[0].toLowerCase().startsWith("norb")) {
    throw new Error("tensor text must start with 'norb N'");
  }
  const n = Number(lines[0].split(/\s+/)[1]);
  const h = new Float64Array(2 * n * n);
  const g = new Float64Array(2 * n ** 4);
  for (const line of lines.slice(1)) {
    const parts = line.split(/\s+/);
    if (parts.length !== 5) throw new Error(`bad tensor line: ${line}`);
    const [re, im] = parseValue(parts[0]);
    const [p, q, r, s] = parts.slice(1).map(Number);
    if (r === 0 && s === 0) {
      const k = 2 * ((p - 1) * n + (q - 1));
      h[k] = re;
      h[k + 1] = im;
    } else {
      const k = 2 * ((((p - 1) * n + (q - 1)) * n + (r - 1)) * n + (s - 1));
      g[k] = re;
      g[k + 1] = im;
    }
  }
  return { norb: n, h, g };
}

/** Hermitian matrix in the engine's `norb` + `<value> p q` format. */
export function formatMatrix(norb: number, m: Float64Array): string {
  if (m.length !== 2 * norb * norb) throw new Error("matrix buffer length mismatch");
  const lines = [`norb ${norb}`];
  for (let p = 0; p < norb; p++) {
    for (let q = 0; q < norb; q++) {
      const k = 2 * (p * norb + q);
      const re = m[k];
      const im = m[k + 1];
      if (re !== 0 || im !== 0) lines.push(`${formatValue(re, im)} ${p + 1} ${q + 1}`);
    }
  }
  return lines.join("\n");
}
