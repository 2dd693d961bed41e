/** Shared view state: one Selection drives every view identically. */
import { emptySelection } from "./types.js";
export class Store {
    constructor() {
        this.listeners = new Set();
        this.state = {
            view: "data",
            selection: emptySelection(),
            categories: [],
            services: [],
            datasets: [],
            treemapScale: "size",
            multiView: false,
        };
    }
    subscribe(listener) {
        this.listeners.add(listener);
        return () => this.listeners.delete(listener);
    }
    update(patch) {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners)
            listener(this.state);
    }
    patchSelection(patch) {
        this.update({ selection: { ...this.state.selection, ...patch } });
    }
    toggleCategory(name) {
        const current = new Set(this.state.selection.categories);
        if (current.has(name))
            current.delete(name);
        else
            current.add(name);
        this.patchSelection({ categories: [...current].sort() });
    }
    toggleDataset(id) {
        const current = new Set(this.state.selection.datasets);
        if (current.has(id))
            current.delete(id);
        else
            current.add(id);
        this.patchSelection({ datasets: [...current].sort() });
    }
    colorOf(category) {
        if (category === null)
            return "#ffffff";
        return this.state.categories.find((c) => c.name === category)?.color ?? "#bab0ac";
    }
}
