import { colorFor, finiteRange } from "./colors.js";
import type { PlannerStore } from "./state.js";
import type { HeatmapResponse } from "./types.js";

export type Tool = "select" | "anchor" | "ris" | "obstacle";

const NODE_HIT_RADIUS_PX = 12;
const OBSTACLE_HALF_SIZE_M = 1.0;

// Canvas map: region outline, heatmap overlay, obstacles, anchors, device.
// All numbers drawn here are geometry only; feasibility figures live in the
// panel and come verbatim from the service.

export class MapView {
  tool: Tool = "select";
  onDragEnd: (() => void) | null = null;
  private heatmap: HeatmapResponse | null = null;
  private dragging: number | null = null;
  private ctx: CanvasRenderingContext2D | null;

  constructor(
    readonly canvas: HTMLCanvasElement,
    readonly store: PlannerStore,
  ) {
    this.ctx = canvas.getContext ? canvas.getContext("2d") : null;
    canvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    canvas.addEventListener("pointerup", () => this.pointerUp());
    canvas.addEventListener("dblclick", (e) => this.doubleClick(e));
    store.subscribe(() => this.render());
  }

  setHeatmap(heatmap: HeatmapResponse | null): void {
    this.heatmap = heatmap;
    this.render();
  }

  // --- coordinate transforms ---

  private regionBounds(): { minX: number; minY: number; maxX: number; maxY: number } {
    const d = this.store.scenario.deployment;
    return { minX: d.region_min_x_m, minY: d.region_min_y_m, maxX: d.region_max_x_m, maxY: d.region_max_y_m };
  }

  toScreen(x: number, y: number): [number, number] {
    const { minX, minY, maxX, maxY } = this.regionBounds();
    const pad = 20;
    const sx = (this.canvas.width - 2 * pad) / (maxX - minX);
    const sy = (this.canvas.height - 2 * pad) / (maxY - minY);
    return [pad + (x - minX) * sx, this.canvas.height - pad - (y - minY) * sy];
  }

  toWorld(px: number, py: number): [number, number] {
    const { minX, minY, maxX, maxY } = this.regionBounds();
    const pad = 20;
    const sx = (this.canvas.width - 2 * pad) / (maxX - minX);
    const sy = (this.canvas.height - 2 * pad) / (maxY - minY);
    return [minX + (px - pad) / sx, minY + (this.canvas.height - pad - py) / sy];
  }

  private eventPoint(e: MouseEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    return [e.clientX - rect.left, e.clientY - rect.top];
  }

  private hitNode(px: number, py: number): number | null {
    const nodes = this.store.scenario.nodes;
    for (let i = nodes.length - 1; i >= 0; i--) {
      const [nx, ny] = this.toScreen(nodes[i]!.x_m, nodes[i]!.y_m);
      if (Math.hypot(nx - px, ny - py) <= NODE_HIT_RADIUS_PX) return i;
    }
    return null;
  }

  private hitObstacle(x: number, y: number): number | null {
    const obstacles = this.store.scenario.obstacles;
    for (let i = obstacles.length - 1; i >= 0; i--) {
      const xs = obstacles[i]!.vertices_m.map((v) => v[0]);
      const ys = obstacles[i]!.vertices_m.map((v) => v[1]);
      if (x >= Math.min(...xs) && x <= Math.max(...xs) && y >= Math.min(...ys) && y <= Math.max(...ys)) {
        return i;
      }
    }
    return null;
  }

  // --- interactions ---

  private pointerDown(e: PointerEvent): void {
    const [px, py] = this.eventPoint(e);
    const [wx, wy] = this.toWorld(px, py);
    if (this.tool === "anchor" || this.tool === "ris") {
      this.store.addNode(wx, wy);
      if (this.tool === "ris") {
        this.store.setNodeKind(this.store.scenario.nodes.length - 1, "ris");
      }
      return;
    }
    if (this.tool === "obstacle") {
      const h = OBSTACLE_HALF_SIZE_M;
      this.store.addObstacle({
        vertices_m: [
          [wx - h, wy - h],
          [wx + h, wy - h],
          [wx + h, wy + h],
          [wx - h, wy + h],
        ],
      });
      return;
    }
    const hit = this.hitNode(px, py);
    this.store.selectNode(hit);
    this.dragging = hit;
  }

  private pointerMove(e: PointerEvent): void {
    if (this.dragging === null) return;
    const [px, py] = this.eventPoint(e);
    const [wx, wy] = this.toWorld(px, py);
    this.store.moveNode(this.dragging, wx, wy);
  }

  private pointerUp(): void {
    if (this.dragging === null) return;
    this.dragging = null;
    // Final position always reaches the service, debounce or not.
    this.onDragEnd?.();
  }

  private doubleClick(e: MouseEvent): void {
    const [px, py] = this.eventPoint(e);
    const node = this.hitNode(px, py);
    if (node !== null) {
      this.store.deleteNode(node);
      return;
    }
    const [wx, wy] = this.toWorld(px, py);
    const obstacle = this.hitObstacle(wx, wy);
    if (obstacle !== null) this.store.deleteObstacle(obstacle);
  }

  // --- painting ---

  render(): void {
    const ctx = this.ctx;
    if (!ctx) return; // test DOMs have no 2D context; state still drives the panel
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    if (this.heatmap) this.paintHeatmap(ctx, this.heatmap);

    const { minX, minY, maxX, maxY } = this.regionBounds();
    const [x0, y0] = this.toScreen(minX, maxY);
    const [x1, y1] = this.toScreen(maxX, minY);
    ctx.strokeStyle = "#555";
    ctx.strokeRect(x0, y0, x1 - x0, y1 - y0);

    ctx.fillStyle = "rgba(90, 90, 90, 0.7)";
    for (const obstacle of this.store.scenario.obstacles) {
      ctx.beginPath();
      obstacle.vertices_m.forEach(([vx, vy], i) => {
        const [sx, sy] = this.toScreen(vx, vy);
        if (i === 0) ctx.moveTo(sx, sy);
        else ctx.lineTo(sx, sy);
      });
      ctx.closePath();
      ctx.fill();
    }

    this.store.scenario.nodes.forEach((node, i) => {
      const [sx, sy] = this.toScreen(node.x_m, node.y_m);
      ctx.beginPath();
      ctx.arc(sx, sy, 7, 0, 2 * Math.PI);
      ctx.fillStyle = node.kind === "bs" ? "#1a6baf" : "#7a1aaf";
      ctx.fill();
      if (i === this.store.view.selectedNode) {
        ctx.strokeStyle = "#ffb300";
        ctx.lineWidth = 2;
        ctx.stroke();
        ctx.lineWidth = 1;
      }
    });

    const dep = this.store.scenario.deployment;
    const [ux, uy] = this.toScreen(dep.ue_x_m, dep.ue_y_m);
    ctx.strokeStyle = "#111";
    ctx.beginPath();
    ctx.moveTo(ux - 6, uy);
    ctx.lineTo(ux + 6, uy);
    ctx.moveTo(ux, uy - 6);
    ctx.lineTo(ux, uy + 6);
    ctx.stroke();
  }

  private paintHeatmap(ctx: CanvasRenderingContext2D, heatmap: HeatmapResponse): void {
    const [lo, hi] = finiteRange(heatmap.values);
    const res = this.store.scenario.deployment.region_resolution_m;
    for (let j = 0; j < heatmap.ys_m.length; j++) {
      for (let i = 0; i < heatmap.xs_m.length; i++) {
        const x = heatmap.xs_m[i]!;
        const y = heatmap.ys_m[j]!;
        const [sx, sy] = this.toScreen(x - res / 2, y + res / 2);
        const [ex, ey] = this.toScreen(x + res / 2, y - res / 2);
        const value = heatmap.values[j]![i]!;
        if (value === null || !Number.isFinite(value)) {
          this.hatchCell(ctx, sx, sy, ex - sx, ey - sy);
        } else {
          ctx.fillStyle = colorFor(value, lo, hi);
          ctx.globalAlpha = 0.55;
          ctx.fillRect(sx, sy, ex - sx, ey - sy);
          ctx.globalAlpha = 1.0;
        }
      }
    }
  }

  private hatchCell(ctx: CanvasRenderingContext2D, x: number, y: number, w: number, h: number): void {
    ctx.save();
    ctx.beginPath();
    ctx.rect(x, y, w, h);
    ctx.clip();
    ctx.strokeStyle = "rgba(60, 60, 60, 0.8)";
    for (let offset = -h; offset < w; offset += 5) {
      ctx.beginPath();
      ctx.moveTo(x + offset, y + h);
      ctx.lineTo(x + offset + h, y);
      ctx.stroke();
    }
    ctx.restore();
  }
}
