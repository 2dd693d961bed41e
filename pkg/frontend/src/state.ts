/** Shared view state: one Selection drives every view identically. */

import type { CategoryInfo, DatasetSummary, Selection } from "./types.js";
import { emptySelection } from "./types.js";

export type ViewName = "data" | "files" | "time" | "list";

export interface AppState {
  view: ViewName;
  selection: Selection;
  categories: CategoryInfo[];
  services: string[];
  datasets: DatasetSummary[];
  treemapScale: "size" | "count";
  multiView: boolean;
}

type Listener = (state: AppState) => void;

export class Store {
  private listeners = new Set<Listener>();

  state: AppState = {
    view: "data",
    selection: emptySelection(),
    categories: [],
    services: [],
    datasets: [],
    treemapScale: "size",
    multiView: false,
  };

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  update(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  patchSelection(patch: Partial<Selection>): void {
    this.update({ selection: { ...this.state.selection, ...patch } });
  }

  toggleCategory(name: string): void {
    const current = new Set(this.state.selection.categories);
    if (current.has(name)) current.delete(name);
    else current.add(name);
    this.patchSelection({ categories: [...current].sort() });
  }

  toggleDataset(id: string): void {
    const current = new Set(this.state.selection.datasets);
    if (current.has(id)) current.delete(id);
    else current.add(id);
    this.patchSelection({ datasets: [...current].sort() });
  }

  colorOf(category: string | null): string {
    if (category === null) return "#ffffff";
    return this.state.categories.find((c) => c.name === category)?.color ?? "#bab0ac";
  }
}
