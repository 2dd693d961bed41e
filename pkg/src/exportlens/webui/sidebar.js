/** Category legend, dataset toggles, and the shared search field. */
export function renderSidebar(root, store) {
    root.innerHTML = "";
    const search = document.createElement("input");
    search.type = "search";
    search.className = "search-box";
    search.placeholder = "Search text…";
    search.value = store.state.selection.query ?? "";
    search.addEventListener("change", () => {
        store.patchSelection({ query: search.value.trim() || null });
    });
    root.appendChild(search);
    const legendTitle = document.createElement("h3");
    legendTitle.textContent = "Categories";
    root.appendChild(legendTitle);
    const legend = document.createElement("ul");
    legend.className = "legend";
    const active = new Set(store.state.selection.categories);
    for (const cat of store.state.categories) {
        const item = document.createElement("li");
        item.className = "legend-item";
        if (active.size && !active.has(cat.name))
            item.classList.add("muted");
        const swatch = document.createElement("span");
        swatch.className = "swatch";
        swatch.style.backgroundColor = cat.color;
        const label = document.createElement("span");
        label.textContent = cat.label;
        item.append(swatch, label);
        item.addEventListener("click", () => store.toggleCategory(cat.name));
        legend.appendChild(item);
    }
    root.appendChild(legend);
    const dsTitle = document.createElement("h3");
    dsTitle.textContent = "Datasets";
    root.appendChild(dsTitle);
    const dsList = document.createElement("ul");
    dsList.className = "dataset-list";
    const selected = new Set(store.state.selection.datasets);
    for (const ds of store.state.datasets) {
        const item = document.createElement("li");
        const box = document.createElement("input");
        box.type = "checkbox";
        box.checked = selected.size === 0 || selected.has(ds.dataset_id);
        box.addEventListener("change", () => store.toggleDataset(ds.dataset_id));
        const label = document.createElement("label");
        label.textContent = `${ds.service} · ${ds.element_count} elements`;
        label.title = ds.dataset_id;
        item.append(box, label);
        dsList.appendChild(item);
    }
    root.appendChild(dsList);
}
