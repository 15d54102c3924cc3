import { allNonDominated } from "./dominance.js";
import type { QueryResponse, RouteRecord } from "./types.js";

/** Route table and Pareto scatter. Scores are rendered with String(), never
 * recomputed or rounded, so the display always equals the response. */

const SVG_NS = "http://www.w3.org/2000/svg";
const W = 360;
const H = 240;
const PAD = 36;

export function renderResults(
  tableRoot: HTMLElement,
  scatterRoot: SVGSVGElement,
  response: QueryResponse | null,
  names: Map<string, string>,
  selected: number,
  onSelect: (index: number) => void,
): void {
  tableRoot.textContent = "";
  scatterRoot.textContent = "";
  if (!response) return;
  if (response.no_route) {
    const p = document.createElement("p");
    p.className = "no-route";
    p.textContent =
      "No feasible route: some requested category has no semantically " +
      "related point of interest in this dataset.";
    tableRoot.appendChild(p);
    return;
  }
  renderTable(tableRoot, response.routes, names, selected, onSelect);
  renderScatter(scatterRoot, response.routes, selected, onSelect);
}

function renderTable(
  root: HTMLElement,
  routes: RouteRecord[],
  names: Map<string, string>,
  selected: number,
  onSelect: (index: number) => void,
): void {
  const table = document.createElement("table");
  table.className = "route-table";
  const head = document.createElement("tr");
  for (const title of ["#", "Length", "Semantic", "Stops"]) {
    const th = document.createElement("th");
    th.textContent = title;
    head.appendChild(th);
  }
  table.appendChild(head);

  routes.forEach((route, i) => {
    const tr = document.createElement("tr");
    tr.className = "route-row" + (i === selected ? " selected" : "");
    tr.dataset.index = String(i);
    tr.addEventListener("click", () => onSelect(i));
    const stops = route.categories
      .map((cid, k) => `${route.names[k]}: ${names.get(cid) ?? cid}`)
      .join(", ");
    for (const text of [
      String(i + 1),
      String(route.length),
      String(route.semantic_score),
      stops,
    ]) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  });
  root.appendChild(table);
}

function renderScatter(
  root: SVGSVGElement,
  routes: RouteRecord[],
  selected: number,
  onSelect: (index: number) => void,
): void {
  root.setAttribute("viewBox", `0 0 ${W} ${H}`);
  if (!allNonDominated(routes)) {
    // A dominated member would mean the response is not a skyline; refuse
    // to plot it as one rather than silently draw a lie.
    const warn = document.createElementNS(SVG_NS, "text");
    warn.setAttribute("x", "10");
    warn.setAttribute("y", "20");
    warn.setAttribute("class", "scatter-error");
    warn.textContent = "response contains dominated routes; not plotting";
    root.appendChild(warn);
    return;
  }

  const maxLen = Math.max(...routes.map((r) => r.length), 1e-12);
  const maxSem = Math.max(...routes.map((r) => r.semantic_score), 1e-12);
  const px = (len: number) => PAD + (len / maxLen) * (W - 2 * PAD);
  const py = (sem: number) => H - PAD - (sem / maxSem) * (H - 2 * PAD);

  for (const [x1, y1, x2, y2] of [
    [PAD, H - PAD, W - PAD / 2, H - PAD],
    [PAD, H - PAD, PAD, PAD / 2],
  ]) {
    const axis = document.createElementNS(SVG_NS, "line");
    axis.setAttribute("x1", String(x1));
    axis.setAttribute("y1", String(y1));
    axis.setAttribute("x2", String(x2));
    axis.setAttribute("y2", String(y2));
    axis.setAttribute("class", "scatter-axis");
    root.appendChild(axis);
  }
  const xLabel = document.createElementNS(SVG_NS, "text");
  xLabel.setAttribute("x", String(W / 2));
  xLabel.setAttribute("y", String(H - 8));
  xLabel.setAttribute("class", "scatter-label");
  xLabel.textContent = "length";
  root.appendChild(xLabel);
  const yLabel = document.createElementNS(SVG_NS, "text");
  yLabel.setAttribute("x", "12");
  yLabel.setAttribute("y", String(H / 2));
  yLabel.setAttribute("class", "scatter-label");
  yLabel.setAttribute("transform", `rotate(-90 12 ${H / 2})`);
  yLabel.textContent = "semantic score";
  root.appendChild(yLabel);

  routes.forEach((route, i) => {
    const c = document.createElementNS(SVG_NS, "circle");
    c.setAttribute("cx", String(px(route.length)));
    c.setAttribute("cy", String(py(route.semantic_score)));
    c.setAttribute("r", i === selected ? "8" : "5");
    c.setAttribute(
      "class",
      "scatter-point" + (i === selected ? " selected" : ""),
    );
    c.setAttribute("data-index", String(i));
    c.addEventListener("click", () => onSelect(i));
    root.appendChild(c);
  });
}
