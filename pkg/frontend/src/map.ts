import type { GraphPayload, RouteRecord } from "./types.js";

/** Plain planar canvas over the dataset's own coordinates. No tiles, no
 * projections; synthetic and fixture-sized datasets render as-is. */

interface Transform {
  sx: (x: number) => number;
  sy: (y: number) => number;
}

const PAD = 24;

export class MapView {
  private graph: GraphPayload | null = null;
  private tf: Transform | null = null;

  constructor(
    private canvas: HTMLCanvasElement,
    private onPick: (vertexId: string) => void,
  ) {
    canvas.addEventListener("click", (ev) => this.handleClick(ev));
  }

  setGraph(graph: GraphPayload): void {
    this.graph = graph;
    this.tf = fitTransform(graph, this.canvas.width, this.canvas.height);
  }

  /** Nearest vertex in screen space; the echo the caller displays is the
   * same id the query will use, so what you see is what is queried. */
  nearestVertex(px: number, py: number): string | null {
    if (!this.graph || !this.tf) return null;
    let best: string | null = null;
    let bestD = Infinity;
    for (const v of this.graph.vertices) {
      const dx = this.tf.sx(v.x) - px;
      const dy = this.tf.sy(v.y) - py;
      const d = dx * dx + dy * dy;
      if (d < bestD) {
        bestD = d;
        best = v.id;
      }
    }
    return best;
  }

  draw(start: string | null, route: RouteRecord | null): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx || !this.graph || !this.tf) return;
    const { sx, sy } = this.tf;
    const g = this.graph;
    const pos = new Map(g.vertices.map((v) => [v.id, v] as const));
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    ctx.strokeStyle = "#c8c8c8";
    ctx.lineWidth = 1;
    for (const [u, v] of g.edges) {
      const a = pos.get(u);
      const b = pos.get(v);
      if (!a || !b) continue;
      ctx.beginPath();
      ctx.moveTo(sx(a.x), sy(a.y));
      ctx.lineTo(sx(b.x), sy(b.y));
      ctx.stroke();
    }

    ctx.fillStyle = "#9a9a9a";
    for (const v of g.vertices) {
      dot(ctx, sx(v.x), sy(v.y), 2);
    }
    ctx.fillStyle = "#2c7a4b";
    for (const p of g.pois) {
      const v = pos.get(p.vertex);
      if (v) dot(ctx, sx(v.x), sy(v.y), 4);
    }

    if (route) {
      ctx.strokeStyle = "#1450b4";
      ctx.lineWidth = 3;
      for (const leg of route.legs) {
        const pts =
          leg.geometry.length > 0
            ? leg.geometry
            : leg.vertices
                .map((id) => pos.get(id))
                .filter((v): v is NonNullable<typeof v> => !!v)
                .map((v) => [v.x, v.y] as [number, number]);
        ctx.beginPath();
        pts.forEach(([x, y], i) => {
          if (i === 0) ctx.moveTo(sx(x), sy(y));
          else ctx.lineTo(sx(x), sy(y));
        });
        ctx.stroke();
      }
      route.pois.forEach((pid, i) => {
        const v = pos.get(pid);
        if (!v) return;
        ctx.fillStyle = "#1450b4";
        dot(ctx, sx(v.x), sy(v.y), 9);
        ctx.fillStyle = "#ffffff";
        ctx.font = "11px sans-serif";
        ctx.textAlign = "center";
        ctx.textBaseline = "middle";
        ctx.fillText(String(i + 1), sx(v.x), sy(v.y));
      });
    }

    if (start) {
      const v = pos.get(start);
      if (v) {
        ctx.fillStyle = "#c03030";
        dot(ctx, sx(v.x), sy(v.y), 6);
      }
    }
  }

  private handleClick(ev: MouseEvent): void {
    const rect = this.canvas.getBoundingClientRect();
    const id = this.nearestVertex(ev.clientX - rect.left, ev.clientY - rect.top);
    if (id) this.onPick(id);
  }
}

function fitTransform(g: GraphPayload, w: number, h: number): Transform {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const v of g.vertices) {
    minX = Math.min(minX, v.x);
    maxX = Math.max(maxX, v.x);
    minY = Math.min(minY, v.y);
    maxY = Math.max(maxY, v.y);
  }
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const scale = Math.min((w - 2 * PAD) / spanX, (h - 2 * PAD) / spanY);
  return {
    sx: (x) => PAD + (x - minX) * scale,
    // Dataset y grows upward, canvas y grows downward.
    sy: (y) => h - PAD - (y - minY) * scale,
  };
}

function dot(ctx: CanvasRenderingContext2D, x: number, y: number, r: number) {
  ctx.beginPath();
  ctx.arc(x, y, r, 0, 2 * Math.PI);
  ctx.fill();
}
