import { afterAll, afterEach } from "vitest";

// Let happy-dom finish any task its fetch tracker still holds (keep-alive
// bookkeeping, microtasks from fire-and-forget handlers) before the window
// tears down; otherwise teardown aborts them and vitest reports the abort
// as an unhandled error.
async function drain(): Promise<void> {
  const api = (globalThis as { happyDOM?: { waitUntilComplete(): Promise<void> } }).happyDOM;
  if (api) await api.waitUntilComplete();
}

afterEach(drain);
afterAll(drain);
