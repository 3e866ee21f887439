/** Thin HTTP bindings for the exact-adjoint engine.
 *
 * Every call posts a JSON request to the running service and returns both
 * the parsed payload and the exact response bytes; the bindings add no
 * numerical behavior of their own.
 */

import type {
  Bound,
  ClassifyResponse,
  CoeffsResponse,
  EngineErrorBody,
  RotateResponse,
  Table1Response,
  TransformRequest,
  TransformResponse,
  VerifyResponse,
} from "./types.js";

export class EngineError extends Error {
  readonly kind: string;
  readonly status: number;

  constructor(status: number, body: EngineErrorBody) {
    super(body.detail ?? `engine request failed with status ${status}`);
    this.kind = body.kind ?? "engine";
    this.status = status;
  }
}

export class EngineClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private async post<T>(path: string, payload: unknown): Promise<Bound<T>> {
    const res = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    const raw = await res.text();
    if (!res.ok) {
      let body: EngineErrorBody;
      try {
        body = JSON.parse(raw) as EngineErrorBody;
      } catch {
        body = { detail: raw, kind: "engine" };
      }
      throw new EngineError(res.status, body);
    }
    return { raw, data: JSON.parse(raw) as T };
  }

  async health(): Promise<boolean> {
    try {
      const res = await fetch(`${this.baseUrl}/health`);
      return res.ok;
    } catch {
      return false;
    }
  }

  /** Conjugate an operator by exp(iθG). */
  transform(req: TransformRequest): Promise<Bound<TransformResponse>> {
    return this.post<TransformResponse>("/transform", req);
  }

  /** Block classification of an excitation-generator/fragment pair. */
  classifyUcc(ucc: string, fragment: string): Promise<Bound<ClassifyResponse>> {
    return this.post<ClassifyResponse>("/classify", { ucc, fragment });
  }

  /** Polynomial coefficients for a set of eigenvalue gaps. */
  coeffs(s: number[], theta: number): Promise<Bound<CoeffsResponse>> {
    return this.post<CoeffsResponse>("/coeffs", { S: s, theta });
  }

  /** Rotate electronic tensors by a one-body orbital rotation. */
  rotateTensors(matrix: string, tensors: string, verify = false): Promise<Bound<RotateResponse>> {
    return this.post<RotateResponse>("/rotate", { matrix, tensors, verify });
  }

  /** Reproduce the block-classification fixture table. */
  table1(extended = false): Promise<Bound<Table1Response>> {
    return this.post<Table1Response>("/table1", { extended });
  }

  /** Route a transform through the dense oracle and report the residual. */
  verify(req: TransformRequest): Promise<Bound<VerifyResponse>> {
    return this.post<VerifyResponse>("/verify", req);
  }
}
