/** Timeline: date on x, time of day on y, one outlined circle per element.
 *
 * Zoom and pan are pure view transforms on the x domain, done client-side;
 * the engine is only re-queried when the selection itself changes. MultiView
 * stacks one aligned panel per dataset for comparison.
 */

import type { EngineApi } from "../api.js";
import type { Store } from "../state.js";
import type { TimelinePanel, TimelinePoint } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const DAY = 86400;

interface XDomain {
  min: number;
  max: number;
}

export async function renderTimeView(
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

  const { panels } = await api.timeline(store.state.selection, store.state.multiView);
  const allPoints = panels.flatMap((p) => p.points);

  const header = document.createElement("div");
  header.className = "view-header";
  const counter = document.createElement("span");
  counter.className = "element-counter";
  counter.dataset.count = String(allPoints.length);
  counter.textContent = `${allPoints.length} timestamped elements`;
  header.appendChild(counter);

  const multiToggle = document.createElement("button");
  multiToggle.className = store.state.multiView ? "toggle active" : "toggle";
  multiToggle.textContent = "MultiView";
  multiToggle.addEventListener("click", () => store.update({ multiView: !store.state.multiView }));
  header.appendChild(multiToggle);
  root.appendChild(header);

  if (allPoints.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No elements with timestamps in the current selection.";
    root.appendChild(empty);
    return;
  }

  const xs = allPoints.map((p) => p.x);
  const domain: XDomain = { min: Math.min(...xs), max: Math.max(...xs) + 1 };
  const plot = new TimelinePlot(store, api, panels, domain);
  root.appendChild(plot.element);
  plot.draw();
}

class TimelinePlot {
  element: HTMLDivElement;
  private svg: SVGSVGElement;
  private tooltip: HTMLDivElement;
  private width = 1100;
  private height = 620;
  private view: XDomain;
  private dragging: { startPx: number; startDomain: XDomain } | null = null;

  constructor(
    private store: Store,
    private api: EngineApi,
    private panels: TimelinePanel[],
    private full: XDomain,
  ) {
    this.view = { ...full };
    this.element = document.createElement("div");
    this.element.className = "timeline-wrap";
    this.svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
    this.svg.setAttribute("class", "timeline");
    this.tooltip = document.createElement("div");
    this.tooltip.className = "tooltip";
    this.tooltip.style.display = "none";
    this.element.append(this.svg, this.tooltip);

    this.svg.addEventListener("wheel", (e) => {
      e.preventDefault();
      const factor = e.deltaY > 0 ? 1.25 : 0.8;
      this.zoom(factor, this.pxToDay(e.offsetX));
    });
    this.svg.addEventListener("mousedown", (e) => {
      this.dragging = { startPx: e.offsetX, startDomain: { ...this.view } };
    });
    this.svg.addEventListener("mousemove", (e) => {
      if (!this.dragging) return;
      const span = this.dragging.startDomain.max - this.dragging.startDomain.min;
      const shift = ((this.dragging.startPx - e.offsetX) / this.plotWidth()) * span;
      this.view = {
        min: this.dragging.startDomain.min + shift,
        max: this.dragging.startDomain.max + shift,
      };
      this.draw();
    });
    const stop = () => (this.dragging = null);
    this.svg.addEventListener("mouseup", stop);
    this.svg.addEventListener("mouseleave", stop);
  }

  private plotWidth(): number {
    return this.width - 60;
  }

  private pxToDay(px: number): number {
    const frac = (px - 50) / this.plotWidth();
    return this.view.min + frac * (this.view.max - this.view.min);
  }

  private zoom(factor: number, around: number): void {
    const span = (this.view.max - this.view.min) * factor;
    const fullSpan = this.full.max - this.full.min;
    const clamped = Math.max(1, Math.min(span, fullSpan * 2));
    const frac = (around - this.view.min) / (this.view.max - this.view.min);
    this.view = { min: around - frac * clamped, max: around + (1 - frac) * clamped };
    this.draw();
  }

  draw(): void {
    this.svg.innerHTML = "";
    const n = this.panels.length;
    const top = 10;
    const bottom = 26;
    const gap = 26;
    const panelH = (this.height - top - bottom - gap * (n - 1)) / n;

    this.panels.forEach((panel, idx) => {
      const y0 = top + idx * (panelH + gap);
      this.drawPanel(panel, y0, panelH, idx === n - 1);
    });
  }

  private sx(day: number): number {
    return 50 + ((day - this.view.min) / (this.view.max - this.view.min)) * this.plotWidth();
  }

  private drawPanel(panel: TimelinePanel, y0: number, panelH: number, labelAxis: boolean): void {
    const frame = document.createElementNS(SVG_NS, "rect");
    frame.setAttribute("x", "50");
    frame.setAttribute("y", String(y0));
    frame.setAttribute("width", String(this.plotWidth()));
    frame.setAttribute("height", String(panelH));
    frame.setAttribute("fill", "none");
    frame.setAttribute("stroke", "#ccc");
    this.svg.appendChild(frame);

    if (panel.label) {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", "50");
      text.setAttribute("y", String(y0 - 4));
      text.setAttribute("class", "panel-label");
      text.textContent = panel.label;
      this.svg.appendChild(text);
    }

    for (const hour of [0, 6, 12, 18, 24]) {
      const y = y0 + (hour / 24) * panelH;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", "50");
      line.setAttribute("x2", String(50 + this.plotWidth()));
      line.setAttribute("y1", String(y));
      line.setAttribute("y2", String(y));
      line.setAttribute("stroke", "#eee");
      this.svg.appendChild(line);
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", "44");
      label.setAttribute("y", String(y + 3));
      label.setAttribute("text-anchor", "end");
      label.setAttribute("class", "axis-label");
      label.textContent = `${String(hour).padStart(2, "0")}:00`;
      this.svg.appendChild(label);
    }

    for (const [day, text] of yearTicks(this.view)) {
      const x = this.sx(day);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(x));
      line.setAttribute("x2", String(x));
      line.setAttribute("y1", String(y0));
      line.setAttribute("y2", String(y0 + panelH));
      line.setAttribute("stroke", "#e4e4e4");
      this.svg.appendChild(line);
      if (labelAxis && text) {
        const label = document.createElementNS(SVG_NS, "text");
        label.setAttribute("x", String(x));
        label.setAttribute("y", String(this.height - 8));
        label.setAttribute("text-anchor", "middle");
        label.setAttribute("class", "axis-label");
        label.textContent = text;
        this.svg.appendChild(label);
      }
    }

    for (const point of panel.points) {
      if (point.x < this.view.min - 1 || point.x > this.view.max + 1) continue;
      this.drawPoint(point, y0, panelH);
    }
  }

  private drawPoint(point: TimelinePoint, y0: number, panelH: number): void {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(this.sx(point.x + point.y / DAY)));
    circle.setAttribute("cy", String(y0 + (point.y / DAY) * panelH));
    circle.setAttribute("r", "2.5");
    circle.setAttribute("fill", "none");
    circle.setAttribute("stroke", this.store.colorOf(point.category));
    circle.setAttribute("stroke-width", "1");
    circle.addEventListener("mouseenter", (e) => void this.showTooltip(point, e));
    circle.addEventListener("mouseleave", () => (this.tooltip.style.display = "none"));
    this.svg.appendChild(circle);
  }

  private async showTooltip(point: TimelinePoint, e: MouseEvent): Promise<void> {
    try {
      const detail = await this.api.element(point.id);
      this.tooltip.style.display = "block";
      this.tooltip.style.left = `${e.pageX + 12}px`;
      this.tooltip.style.top = `${e.pageY + 12}px`;
      this.tooltip.textContent =
        `${detail.time ?? "undated"} · ${detail.category} · ${detail.subcategory}\n${detail.text}`;
    } catch {
      /* tooltip is best-effort */
    }
  }
}

function yearTicks(view: XDomain): Array<[number, string | null]> {
  const ticks: Array<[number, string | null]> = [];
  const startYear = new Date((view.min - 1) * DAY * 1000).getUTCFullYear();
  const endYear = new Date((view.max + 1) * DAY * 1000).getUTCFullYear();
  const monthly = view.max - view.min <= 1100;
  for (let year = startYear; year <= endYear + 1; year++) {
    for (let month = 0; month < 12; month++) {
      const day = Date.UTC(year, month, 1) / (DAY * 1000);
      if (day < view.min || day > view.max) continue;
      if (month === 0) ticks.push([day, String(year)]);
      else if (monthly) ticks.push([day, null]);
    }
  }
  return ticks;
}
