/** App shell: navigation, shared sidebar, view dispatch.
 *
 * The engine origin is the page's own origin; the guarded fetch makes any
 * other destination an error, so "local only" is enforced in code rather
 * than by promise.
 */

import { createGuardedFetch, EngineApi, type RequestRecord } from "./api.js";
import { Store, type ViewName } from "./state.js";
import { renderSidebar } from "./sidebar.js";
import { renderDataPage } from "./views/datapage.js";
import { renderFileView } from "./views/fileview.js";
import { renderTimeView } from "./views/timeview.js";
import { renderListView } from "./views/listview.js";

const VIEWS: Array<{ id: ViewName; label: string }> = [
  { id: "data", label: "Data" },
  { id: "files", label: "Files" },
  { id: "time", label: "Timeline" },
  { id: "list", label: "Details" },
];

export function bootApp(rootEl: HTMLElement, engineBase: string): { store: Store; requestLog: RequestRecord[] } {
  const requestLog: RequestRecord[] = [];
  const api = new EngineApi(engineBase, createGuardedFetch(engineBase, requestLog));
  const store = new Store();

  rootEl.innerHTML = `
    <nav class="topnav"><span class="brand">exportlens</span></nav>
    <div class="layout">
      <aside id="sidebar"></aside>
      <main id="view"></main>
    </div>`;
  const nav = rootEl.querySelector(".topnav") as HTMLElement;
  const sidebarEl = rootEl.querySelector("#sidebar") as HTMLElement;
  const viewEl = rootEl.querySelector("#view") as HTMLElement;

  for (const { id, label } of VIEWS) {
    const button = document.createElement("button");
    button.textContent = label;
    button.dataset.view = id;
    button.addEventListener("click", () => store.update({ view: id }));
    nav.appendChild(button);
  }

  async function refreshDatasets(): Promise<void> {
    store.update({ datasets: await api.datasets() });
  }

  function render(): void {
    for (const button of nav.querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.view === store.state.view);
    }
    renderSidebar(sidebarEl, store);
    switch (store.state.view) {
      case "data":
        renderDataPage(viewEl, store, api, refreshDatasets);
        break;
      case "files":
        void renderFileView(viewEl, store, api);
        break;
      case "time":
        void renderTimeView(viewEl, store, api);
        break;
      case "list":
        void renderListView(viewEl, store, api);
        break;
    }
  }

  store.subscribe(render);

  void (async () => {
    const [categories, services] = await Promise.all([api.categories(), api.services()]);
    store.update({ categories, services });
    await refreshDatasets();
  })();

  return { store, requestLog };
}

declare global {
  interface Window {
    exportlens?: ReturnType<typeof bootApp>;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.exportlens = bootApp(
    document.getElementById("app") as HTMLElement,
    window.location.origin,
  );
}
