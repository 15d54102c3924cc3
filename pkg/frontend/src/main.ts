import { httpApi, buildRequest, ApiError, type Api } from "./api.js";
import { MapView } from "./map.js";
import { nameIndex, renderPicker } from "./picker.js";
import { renderResults } from "./results.js";
import { renderSequence } from "./sequence.js";
import {
  addCategory,
  canSubmit,
  clearResponse,
  initialState,
  moveCategory,
  removeCategory,
  selectRoute,
  setResponse,
  setStart,
  type UiState,
} from "./state.js";

export interface AppHandle {
  getState(): UiState;
  /** Resolves when no query is in flight (used by tests; harmless live). */
  settled(): Promise<void>;
}

export async function init(root: HTMLElement, api: Api): Promise<AppHandle> {
  root.textContent = "";
  const dom = buildLayout(root);

  let state = initialState();
  let inFlight: AbortController | null = null;
  let pending: Promise<void> = Promise.resolve();

  const [health, forest, graph] = await Promise.all([
    api.health(),
    api.categories(),
    api.graph(),
  ]);
  dom.dataset.textContent = `${health.dataset}: ${health.counts.vertices} vertices, ${health.counts.pois} PoIs`;
  const names = nameIndex(forest);

  const map = new MapView(dom.map, (vertexId) => {
    update(setStart(state, vertexId));
  });
  map.setGraph(graph);

  renderPicker(dom.picker, forest, (cid) => {
    update(addCategory(state, cid));
  });

  function update(next: UiState): void {
    state = next;
    dom.startEcho.textContent = state.start ?? "click the map";
    renderSequence(dom.sequence, state.sequence, names, {
      move: (from, to) => update(moveCategory(state, from, to)),
      remove: (i) => update(removeCategory(state, i)),
    });
    dom.submit.disabled = !canSubmit(state);
    renderResults(dom.table, dom.scatter, state.response, names,
      state.selected, (i) => update(selectRoute(state, i)));
    const route =
      state.response && state.selected >= 0
        ? state.response.routes[state.selected]
        : null;
    map.draw(state.start, route);
  }

  function submit(): void {
    if (!canSubmit(state)) return;
    // One query in flight at a time; a resubmit abandons the old one and
    // its response never reaches the screen.
    inFlight?.abort();
    const controller = new AbortController();
    inFlight = controller;
    update(clearResponse(state));
    dom.status.textContent = "Searching...";
    const req = buildRequest(state.start as string, state.sequence);
    pending = api
      .query(req, controller.signal)
      .then((resp) => {
        if (controller.signal.aborted) return;
        dom.status.textContent = resp.no_route
          ? ""
          : `${resp.routes.length} route(s) in ${resp.elapsed.toFixed(3)}s`;
        update(setResponse(state, resp));
      })
      .catch((err) => {
        if (controller.signal.aborted) return;
        dom.status.textContent =
          err instanceof ApiError ? err.message : "query failed";
      });
  }

  dom.submit.addEventListener("click", submit);
  update(state);
  return {
    getState: () => state,
    settled: () => pending,
  };
}

interface Layout {
  dataset: HTMLElement;
  startEcho: HTMLElement;
  picker: HTMLElement;
  sequence: HTMLElement;
  submit: HTMLButtonElement;
  status: HTMLElement;
  map: HTMLCanvasElement;
  table: HTMLElement;
  scatter: SVGSVGElement;
}

function buildLayout(root: HTMLElement): Layout {
  const header = document.createElement("header");
  const title = document.createElement("h1");
  title.textContent = "skysr";
  const dataset = document.createElement("span");
  dataset.id = "dataset-info";
  header.append(title, dataset);

  const controls = document.createElement("aside");
  controls.id = "controls";

  const startSection = section(controls, "Start");
  const startEcho = document.createElement("span");
  startEcho.id = "start-echo";
  startEcho.textContent = "click the map";
  startSection.appendChild(startEcho);

  const pickerSection = section(controls, "Categories");
  const picker = document.createElement("div");
  picker.id = "picker";
  pickerSection.appendChild(picker);

  const seqSection = section(controls, "Visit order");
  const sequence = document.createElement("div");
  sequence.id = "sequence";
  seqSection.appendChild(sequence);

  const submit = document.createElement("button");
  submit.id = "submit";
  submit.type = "button";
  submit.disabled = true;
  submit.textContent = "Find routes";
  controls.appendChild(submit);

  const status = document.createElement("div");
  status.id = "status";
  controls.appendChild(status);

  const views = document.createElement("section");
  views.id = "views";
  const map = document.createElement("canvas");
  map.id = "map";
  map.width = 640;
  map.height = 480;
  views.appendChild(map);

  const results = document.createElement("div");
  results.id = "results";
  const table = document.createElement("div");
  table.id = "route-list";
  const scatter = document.createElementNS(
    "http://www.w3.org/2000/svg", "svg") as SVGSVGElement;
  scatter.id = "scatter";
  results.append(table, scatter);
  views.appendChild(results);

  const mainEl = document.createElement("main");
  mainEl.append(controls, views);
  root.append(header, mainEl);
  return {
    dataset, startEcho, picker, sequence, submit, status, map, table, scatter,
  };
}

function section(parent: HTMLElement, heading: string): HTMLElement {
  const s = document.createElement("section");
  const h = document.createElement("h2");
  h.textContent = heading;
  s.appendChild(h);
  parent.appendChild(s);
  return s;
}

const autoRoot = document.getElementById("app");
if (autoRoot) {
  void init(autoRoot, httpApi());
}
