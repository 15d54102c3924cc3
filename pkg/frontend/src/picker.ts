import type { CategoryNode } from "./types.js";

/** Nested category list; every node is pickable (an ancestor is a valid,
 * looser query term). PoI counts steer users away from empty subtrees. */
export function renderPicker(
  root: HTMLElement,
  forest: CategoryNode[],
  onPick: (categoryId: string) => void,
): void {
  root.textContent = "";
  if (forest.length === 0) {
    const p = document.createElement("p");
    p.className = "empty-note";
    p.textContent = "This dataset has no categories.";
    root.appendChild(p);
    return;
  }
  root.appendChild(buildList(forest, onPick));
}

function buildList(
  nodes: CategoryNode[],
  onPick: (categoryId: string) => void,
): HTMLUListElement {
  const ul = document.createElement("ul");
  ul.className = "category-list";
  for (const node of nodes) {
    const li = document.createElement("li");
    const btn = document.createElement("button");
    btn.type = "button";
    btn.className = "category-pick";
    btn.dataset.categoryId = node.id;
    btn.textContent = `${node.name} (${node.poi_count})`;
    btn.addEventListener("click", () => onPick(node.id));
    li.appendChild(btn);
    if (node.children.length > 0) {
      li.appendChild(buildList(node.children, onPick));
    }
    ul.appendChild(li);
  }
  return ul;
}

/** Flat id -> display name map for labeling stops in the results table. */
export function nameIndex(forest: CategoryNode[]): Map<string, string> {
  const out = new Map<string, string>();
  const walk = (nodes: CategoryNode[]) => {
    for (const n of nodes) {
      out.set(n.id, n.name);
      walk(n.children);
    }
  };
  walk(forest);
  return out;
}
