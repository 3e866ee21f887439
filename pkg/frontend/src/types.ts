/** Request/response shapes of the engine service (schema version 1). */

export interface TransformRequest {
  generator?: string;
  ucc?: string;
  hamiltonian?: string;
  fragment?: string;
  theta: number;
  verify?: boolean;
  tolerance?: number;
  max_qubits?: number | null;
}

export interface TransformResponse {
  schema: number;
  theta: number;
  S: number[];
  coefficients: number[];
  n_commutators: number;
  transformed_operator: string;
  oracle_residual: number | null;
  verify_ok?: boolean;
}

export interface ClassifyResponse {
  schema: number;
  T_G: string;
  T_alpha: string;
  case_label: string;
  vanishing_blocks: string[];
  S: number[];
  n_commutators: number;
}

export interface CoeffsResponse {
  schema: number;
  theta: number;
  S: number[];
  coefficients: number[];
  n_commutators: number;
}

export interface RotateResponse {
  schema: number;
  tensors: string;
  oracle_residual: number | null;
  verify_ok?: boolean;
}

export interface Table1Row {
  row: number;
  T_G: string;
  T_alpha: string;
  case_label: string;
  vanishing_blocks: string[];
  S: number[];
  n_commutators: number;
  agrees: boolean;
}

export interface Table1Response {
  schema: number;
  rows: Table1Row[];
  all_agree: boolean;
  extended_checked?: number;
  extended_agree?: number;
}

export interface VerifyResponse {
  schema: number;
  oracle_residual: number;
  tolerance: number;
  ok: boolean;
}

export interface EngineErrorBody {
  detail: string;
  kind: string;
}

/** A response paired with the exact bytes the service sent. */
export interface Bound<T> {
  raw: string;
  data: T;
}
