/** Detail list: chronological rows with a sensitivity slider each.
 *
 * Rows are virtualized: only the visible window exists in the DOM, and pages
 * are fetched from the engine on demand, so six-figure location histories
 * scroll without choking the tab. The average updates after every rating,
 * straight from the store's response.
 */

import type { EngineApi } from "../api.js";
import type { Store } from "../state.js";
import type { ElementRow } from "../types.js";

const ROW_HEIGHT = 58;
const PAGE_SIZE = 200;

export async function renderListView(
  root: HTMLElement,
  store: Store,
  api: EngineApi,
): Promise<void> {
  root.innerHTML = "";
  if (store.state.datasets.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No datasets loaded yet. Drop an export on the Data page first.";
    root.appendChild(empty);
    return;
  }

  const header = document.createElement("div");
  header.className = "view-header";
  const counter = document.createElement("span");
  counter.className = "element-counter";
  const averageBox = document.createElement("span");
  averageBox.className = "average-box";
  averageBox.dataset.role = "sensitivity-average";
  header.append(counter, averageBox);
  root.appendChild(header);

  const first = await api.elements(store.state.selection, 0, PAGE_SIZE);
  counter.dataset.count = String(first.total);
  counter.textContent = `${first.total} elements`;

  const avg = await api.average(store.state.selection);
  setAverage(averageBox, avg.average, avg.rated_count);

  const viewport = document.createElement("div");
  viewport.className = "list-viewport";
  const spacer = document.createElement("div");
  spacer.style.height = `${first.total * ROW_HEIGHT}px`;
  spacer.style.position = "relative";
  viewport.appendChild(spacer);
  root.appendChild(viewport);

  const pages = new Map<number, ElementRow[]>();
  pages.set(0, first.rows);
  const pending = new Set<number>();

  async function pageFor(index: number): Promise<ElementRow[] | undefined> {
    const page = Math.floor(index / PAGE_SIZE);
    if (pages.has(page)) return pages.get(page);
    if (!pending.has(page)) {
      pending.add(page);
      try {
        const result = await api.elements(store.state.selection, page * PAGE_SIZE, PAGE_SIZE);
        pages.set(page, result.rows);
        renderWindow();
      } finally {
        pending.delete(page);
      }
    }
    return pages.get(page);
  }

  function rowAt(index: number): ElementRow | undefined {
    const page = pages.get(Math.floor(index / PAGE_SIZE));
    return page?.[index % PAGE_SIZE];
  }

  function renderWindow(): void {
    // clientHeight is 0 before layout (and in headless DOMs); window a
    // screenful regardless so the list is never empty.
    const viewHeight = viewport.clientHeight || 620;
    const start = Math.max(0, Math.floor(viewport.scrollTop / ROW_HEIGHT) - 5);
    const end = Math.min(
      first.total,
      Math.ceil((viewport.scrollTop + viewHeight + 1) / ROW_HEIGHT) + 5,
    );
    spacer.innerHTML = "";
    for (let i = start; i < end; i++) {
      const row = rowAt(i);
      if (!row) {
        void pageFor(i);
        continue;
      }
      spacer.appendChild(buildRow(row, i));
    }
  }

  function buildRow(row: ElementRow, index: number): HTMLElement {
    const el = document.createElement("div");
    el.className = "list-row";
    el.style.position = "absolute";
    el.style.top = `${index * ROW_HEIGHT}px`;
    el.style.height = `${ROW_HEIGHT}px`;
    el.dataset.elementId = row.id;

    const meta = document.createElement("div");
    meta.className = "row-meta";
    const dot = document.createElement("span");
    dot.className = "swatch";
    dot.style.backgroundColor = store.colorOf(row.category);
    const when = document.createElement("span");
    when.textContent = row.time ?? "undated";
    const what = document.createElement("span");
    what.textContent = `${row.category} · ${row.subcategory}`;
    meta.append(dot, when, what);

    const text = document.createElement("div");
    text.className = "row-text";
    text.textContent = row.text;

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "100";
    slider.value = "0";
    slider.title = "Not very sensitive … Very sensitive";
    slider.addEventListener("change", () => {
      void rateRow(row.id, Number(slider.value) / 100, el);
    });

    el.append(meta, text, slider);
    return el;
  }

  async function rateRow(id: string, value: number, rowEl: HTMLElement): Promise<void> {
    try {
      const result = await api.rate(id, value);
      setAverage(averageBox, result.average, result.rated_count);
      if (!result.persisted) {
        rowEl.classList.add("unpersisted");
        rowEl.title = "Rating kept in memory; writing the ratings file failed.";
      }
    } catch (err) {
      rowEl.classList.add("rating-error");
      rowEl.title = (err as Error).message;
    }
  }

  viewport.addEventListener("scroll", renderWindow);
  renderWindow();
}

function setAverage(box: HTMLElement, average: number | null, count: number): void {
  box.dataset.average = average === null ? "" : average.toFixed(4);
  box.dataset.ratedCount = String(count);
  box.textContent =
    average === null
      ? "Average sensitivity: none rated yet"
      : `Average sensitivity: ${average.toFixed(2)} over ${count} rated`;
}
