/** The ordered category sequence being composed. Items drag to reorder;
 * the arrow buttons do the same for keyboard use and for test drivers that
 * do not synthesize drag events. */

export interface SequenceHandlers {
  move(from: number, to: number): void;
  remove(index: number): void;
}

export function renderSequence(
  root: HTMLElement,
  sequence: string[],
  names: Map<string, string>,
  handlers: SequenceHandlers,
): void {
  root.textContent = "";
  if (sequence.length === 0) {
    const p = document.createElement("p");
    p.className = "empty-note";
    p.textContent = "Pick categories to build the visit order.";
    root.appendChild(p);
    return;
  }
  const ol = document.createElement("ol");
  ol.className = "sequence-list";
  sequence.forEach((cid, i) => {
    ol.appendChild(buildItem(cid, i, sequence.length, names, handlers));
  });
  root.appendChild(ol);
}

function buildItem(
  cid: string,
  index: number,
  total: number,
  names: Map<string, string>,
  handlers: SequenceHandlers,
): HTMLLIElement {
  const li = document.createElement("li");
  li.className = "sequence-item";
  li.draggable = true;
  li.dataset.index = String(index);
  li.dataset.categoryId = cid;

  li.addEventListener("dragstart", (ev) => {
    ev.dataTransfer?.setData("text/plain", String(index));
  });
  li.addEventListener("dragover", (ev) => ev.preventDefault());
  li.addEventListener("drop", (ev) => {
    ev.preventDefault();
    const raw = ev.dataTransfer?.getData("text/plain") ?? "";
    const from = Number.parseInt(raw, 10);
    if (!Number.isNaN(from)) handlers.move(from, index);
  });

  const label = document.createElement("span");
  label.className = "sequence-label";
  label.textContent = names.get(cid) ?? cid;
  li.appendChild(label);

  li.appendChild(button("up", "↑", index === 0, () =>
    handlers.move(index, index - 1)));
  li.appendChild(button("down", "↓", index === total - 1, () =>
    handlers.move(index, index + 1)));
  li.appendChild(button("remove", "×", false, () =>
    handlers.remove(index)));
  return li;
}

function button(
  kind: string,
  text: string,
  disabled: boolean,
  onClick: () => void,
): HTMLButtonElement {
  const b = document.createElement("button");
  b.type = "button";
  b.className = `seq-${kind}`;
  b.textContent = text;
  b.disabled = disabled;
  b.addEventListener("click", onClick);
  return b;
}
