/** File overview: the engine's treemap geometry rendered as SVG.
 *
 * Layout comes fully computed from the engine; this view only draws and
 * decorates. The header count is derived from the tiles themselves so any
 * disagreement with the other views would be visible immediately.
 */
const SVG_NS = "http://www.w3.org/2000/svg";
export async function renderFileView(root, store, api) {
    root.innerHTML = "";
    if (store.state.datasets.length === 0) {
        const empty = document.createElement("p");
        empty.className = "empty-state";
        empty.textContent = "No datasets loaded yet. Drop an export on the Data page first.";
        root.appendChild(empty);
        return;
    }
    const width = 1100;
    const height = 640;
    let tiles;
    try {
        ({ tiles } = await api.treemap(store.state.selection, store.state.treemapScale, width, height));
    }
    catch (err) {
        const msg = document.createElement("p");
        msg.className = "empty-state";
        msg.textContent = `Nothing to show: ${err.message}`;
        root.appendChild(msg);
        return;
    }
    const header = document.createElement("div");
    header.className = "view-header";
    const elementTotal = tiles.reduce((acc, t) => acc + t.file.element_count, 0);
    const counter = document.createElement("span");
    counter.className = "element-counter";
    counter.dataset.count = String(elementTotal);
    counter.textContent = `${tiles.length} files · ${elementTotal} data elements`;
    header.appendChild(counter);
    for (const scale of ["size", "count"]) {
        const button = document.createElement("button");
        button.textContent = scale === "size" ? "Scale: file size" : "Scale: element count";
        button.className = store.state.treemapScale === scale ? "toggle active" : "toggle";
        button.addEventListener("click", () => store.update({ treemapScale: scale }));
        header.appendChild(button);
    }
    root.appendChild(header);
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    svg.setAttribute("class", "treemap");
    const tooltip = document.createElement("div");
    tooltip.className = "tooltip";
    tooltip.style.display = "none";
    for (const tile of tiles) {
        if (tile.w <= 0 || tile.h <= 0)
            continue;
        const rect = document.createElementNS(SVG_NS, "rect");
        rect.setAttribute("x", String(tile.x));
        rect.setAttribute("y", String(tile.y));
        rect.setAttribute("width", String(tile.w));
        rect.setAttribute("height", String(tile.h));
        rect.setAttribute("fill", tile.color);
        rect.setAttribute("stroke", "#555");
        rect.setAttribute("stroke-width", "0.5");
        rect.addEventListener("mousemove", (e) => {
            tooltip.style.display = "block";
            tooltip.style.left = `${e.pageX + 12}px`;
            tooltip.style.top = `${e.pageY + 12}px`;
            tooltip.textContent =
                `${tile.file.folder}${tile.file.name}\n` +
                    `${tile.file.size_bytes} bytes · ${tile.file.file_category}\n` +
                    (tile.file.data_category
                        ? `${tile.file.data_category} · ${tile.file.element_count} elements`
                        : "no data elements");
        });
        rect.addEventListener("mouseleave", () => (tooltip.style.display = "none"));
        svg.appendChild(rect);
    }
    root.append(svg, tooltip);
}
