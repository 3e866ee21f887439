export { EngineClient, EngineError } from "./client.js";
export {
  formatFloat,
  formatMatrix,
  formatTensors,
  parseTensors,
} from "./tensors.js";
export type { ComplexTensors } from "./tensors.js";
export type {
  Bound,
  ClassifyResponse,
  CoeffsResponse,
  EngineErrorBody,
  RotateResponse,
  Table1Response,
  Table1Row,
  TransformRequest,
  TransformResponse,
  VerifyResponse,
} from "./types.js";
