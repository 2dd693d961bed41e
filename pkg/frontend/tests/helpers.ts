import { readFileSync } from "node:fs";
import { join } from "node:path";

import { EngineApi, EngineError, createGuardedFetch, type RequestRecord } from "../src/api.js";
import { Store } from "../src/state.js";
import type { RuntimeInfo } from "./globalSetup.js";

export function runtime(): RuntimeInfo {
  return JSON.parse(readFileSync(join(__dirname, ".runtime.json"), "utf-8")) as RuntimeInfo;
}

export function makeApi(info: RuntimeInfo): { api: EngineApi; log: RequestRecord[] } {
  const log: RequestRecord[] = [];
  const api = new EngineApi(info.baseUrl, createGuardedFetch(info.baseUrl, log));
  return { api, log };
}

/** Upload every scenario archive; reruns tolerate already-loaded datasets. */
export async function ensureDatasets(api: EngineApi, info: RuntimeInfo): Promise<void> {
  for (const [name, path] of Object.entries(info.archives)) {
    const data = readFileSync(path);
    try {
      await api.uploadArchive(`${name}.zip`, data.buffer.slice(data.byteOffset, data.byteOffset + data.byteLength) as ArrayBuffer);
    } catch (err) {
      if (err instanceof EngineError && err.status === 409) continue;
      throw err;
    }
  }
}

export async function makeStore(api: EngineApi): Promise<Store> {
  const store = new Store();
  const [categories, services, datasets] = await Promise.all([
    api.categories(),
    api.services(),
    api.datasets(),
  ]);
  store.update({ categories, services, datasets });
  return store;
}

export async function waitFor(
  predicate: () => boolean,
  timeoutMs = 5000,
): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) throw new Error("waitFor timed out");
    await new Promise((r) => setTimeout(r, 25));
  }
}

export function mount(): HTMLElement {
  document.body.innerHTML = "";
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}
