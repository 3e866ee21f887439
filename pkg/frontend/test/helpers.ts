import { spawn, spawnSync, type ChildProcess } from "node:child_process";

export interface RunningService {
  url: string;
  stop: () => void;
}

/** Start the Python engine service and wait for its health endpoint. */
export async function startService(): Promise<RunningService> {
  const port = 8400 + Math.floor(Math.random() * 800);
  const url = `http://127.0.0.1:${port}`;
  const child: ChildProcess = spawn(
    "python3",
    ["-m", "uvicorn", "exact_adjoint.service:app",
     "--host", "127.0.0.1", "--port", String(port), "--log-level", "warning"],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk) => {
    stderr += String(chunk);
  });
  const deadline = Date.now() + 60_000;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${url}/health`);
      if (res.ok) {
        return { url, stop: () => child.kill("SIGTERM") };
      }
    } catch {
      // not up yet
    }
    if (child.exitCode !== null) break;
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  child.kill("SIGTERM");
  throw new Error(`engine service failed to start: ${stderr}`);
}

/** Run the CLI against the same service and capture its stdout bytes. */
export function runCli(url: string, args: string[]): Buffer {
  const result = spawnSync(
    "python3",
    ["-m", "exact_adjoint.cli", ...args, "--server", url, "--json"],
    { maxBuffer: 64 * 1024 * 1024 },
  );
  if (result.status !== 0) {
    throw new Error(`cli exited with ${result.status}: ${result.stderr}`);
  }
  return result.stdout;
}
