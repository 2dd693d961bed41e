/** Landing page: drop zone plus one tile per supported service.
 *
 * Dropped archives go straight to the local engine; a tile lights up once
 * its service has at least one loaded dataset. Nothing touches disk and the
 * session state vanishes with the engine process.
 */

import { EngineError, type EngineApi } from "../api.js";
import type { Store } from "../state.js";

export function renderDataPage(
  root: HTMLElement,
  store: Store,
  api: EngineApi,
  onLoaded: () => Promise<void>,
): void {
  root.innerHTML = "";

  const zone = document.createElement("div");
  zone.className = "dropzone";
  zone.textContent = "Drop export zip archives here (or click to choose)";

  const picker = document.createElement("input");
  picker.type = "file";
  picker.accept = ".zip";
  picker.multiple = true;
  picker.style.display = "none";

  const toast = document.createElement("div");
  toast.className = "toast";
  toast.setAttribute("role", "status");

  async function ingestFiles(files: Iterable<File>): Promise<void> {
    for (const file of files) {
      if (!file.name.toLowerCase().endsWith(".zip")) {
        showToast(`${file.name}: not a zip archive`, true);
        continue;
      }
      const body = await file.arrayBuffer();
      try {
        const result = await api.uploadArchive(file.name, body);
        showToast(
          `${file.name}: ${result.dataset.service}, ` +
            `${result.dataset.element_count} elements`,
          false,
        );
      } catch (err) {
        if (err instanceof EngineError && err.status === 422) {
          offerManualService(file.name, body);
        } else {
          showToast(`${file.name}: ${(err as Error).message}`, true);
        }
      }
    }
    await onLoaded();
  }

  function showToast(message: string, isError: boolean): void {
    const line = document.createElement("div");
    line.className = isError ? "toast-line error" : "toast-line";
    line.textContent = message;
    toast.appendChild(line);
  }

  /** Detection failed: let the user name the service and retry. */
  function offerManualService(name: string, body: ArrayBuffer): void {
    const line = document.createElement("div");
    line.className = "toast-line service-prompt";
    const label = document.createElement("span");
    label.textContent = `${name}: service not recognized; parse as `;
    const select = document.createElement("select");
    for (const service of store.state.services) {
      const option = document.createElement("option");
      option.value = service;
      option.textContent = service;
      select.appendChild(option);
    }
    const retry = document.createElement("button");
    retry.textContent = "Load";
    retry.addEventListener("click", async () => {
      try {
        const result = await api.uploadArchive(name, body, select.value);
        line.replaceChildren(
          `${name}: ${result.dataset.service}, ${result.dataset.element_count} elements`,
        );
        line.classList.remove("service-prompt");
        await onLoaded();
      } catch (err) {
        showToast(`${name}: ${(err as Error).message}`, true);
      }
    });
    line.append(label, select, retry);
    toast.appendChild(line);
  }

  zone.addEventListener("dragover", (e) => {
    e.preventDefault();
    zone.classList.add("drag-over");
  });
  zone.addEventListener("dragleave", () => zone.classList.remove("drag-over"));
  zone.addEventListener("drop", (e) => {
    e.preventDefault();
    zone.classList.remove("drag-over");
    const files = e.dataTransfer?.files;
    if (files?.length) void ingestFiles(files);
  });
  zone.addEventListener("click", () => picker.click());
  picker.addEventListener("change", () => {
    if (picker.files?.length) void ingestFiles(picker.files);
  });

  const tiles = document.createElement("div");
  tiles.className = "service-tiles";
  const loadedServices = new Set(store.state.datasets.map((d) => d.service));
  for (const service of store.state.services) {
    const tile = document.createElement("div");
    tile.className = "service-tile";
    tile.dataset.service = service;
    const name = document.createElement("h4");
    name.textContent = service;
    tile.appendChild(name);
    if (loadedServices.has(service)) {
      tile.classList.add("loaded");
      for (const ds of store.state.datasets.filter((d) => d.service === service)) {
        const line = document.createElement("div");
        line.className = "dataset-line";
        line.textContent = `${ds.dataset_id} · ${ds.element_count} elements`;
        tile.appendChild(line);
      }
    } else {
      const hint = document.createElement("p");
      hint.className = "hint";
      hint.textContent = "Request your export from the service, then drop the zip above.";
      tile.appendChild(hint);
    }
    tiles.appendChild(tile);
  }

  root.append(zone, picker, toast, tiles);
}
