// Browser entry: load a seed, click vertices to mutate, undo, read the log.

import { BackendError, ExplorerClient } from "./api.js";
import { render, SessionView } from "./view.js";

declare global {
  interface Window {
    HLCLUSTER_BACKEND?: string;
  }
}

// same-origin by default; set window.HLCLUSTER_BACKEND to point elsewhere
const client = new ExplorerClient(window.HLCLUSTER_BACKEND ?? "");

const CELL = 130;
const PAD = 60;

function el<K extends keyof HTMLElementTagNameMap>(tag: K, cls?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  return node;
}

function banner(text: string): void {
  const box = document.getElementById("banner")!;
  box.textContent = text;
  box.style.display = text ? "block" : "none";
}

async function refresh(): Promise<void> {
  try {
    const [seed, log] = [await client.seed(), await client.log()];
    draw(render(seed, log));
    banner("");
  } catch (err) {
    if (err instanceof BackendError && err.status === 409) {
      banner("no seed loaded yet");
    } else {
      banner(String(err));
    }
  }
}

function draw(view: SessionView): void {
  const svgns = "http://www.w3.org/2000/svg";
  const host = document.getElementById("canvas")!;
  host.innerHTML = "";
  const svg = document.createElementNS(svgns, "svg");
  svg.setAttribute("width", String(view.columns * CELL + 2 * PAD));
  svg.setAttribute("height", String(view.rows * CELL + 2 * PAD));
  const pos = new Map(view.vertices.map((v) => [v.id, v]));

  const marker = document.createElementNS(svgns, "marker");
  marker.setAttribute("id", "arrowhead");
  marker.setAttribute("markerWidth", "8");
  marker.setAttribute("markerHeight", "8");
  marker.setAttribute("refX", "7");
  marker.setAttribute("refY", "3");
  marker.setAttribute("orient", "auto");
  const tip = document.createElementNS(svgns, "path");
  tip.setAttribute("d", "M0,0 L8,3 L0,6 Z");
  marker.appendChild(tip);
  svg.appendChild(marker);

  const xy = (v: { col: number; row: number }) => ({
    x: PAD + (v.col - 1) * CELL,
    y: PAD + (v.row - 1) * CELL,
  });

  for (const arrow of view.arrows) {
    const a = pos.get(arrow.from)!;
    const b = pos.get(arrow.to)!;
    const pa = xy(a);
    const pb = xy(b);
    const dx = pb.x - pa.x;
    const dy = pb.y - pa.y;
    const len = Math.hypot(dx, dy) || 1;
    const trim = 26;
    const line = document.createElementNS(svgns, "line");
    line.setAttribute("x1", String(pa.x + (dx / len) * trim));
    line.setAttribute("y1", String(pa.y + (dy / len) * trim));
    line.setAttribute("x2", String(pb.x - (dx / len) * trim));
    line.setAttribute("y2", String(pb.y - (dy / len) * trim));
    line.setAttribute("class", "arrow");
    line.setAttribute("marker-end", "url(#arrowhead)");
    svg.appendChild(line);
    if (arrow.mult > 1) {
      const label = document.createElementNS(svgns, "text");
      label.setAttribute("x", String((pa.x + pb.x) / 2 + 6));
      label.setAttribute("y", String((pa.y + pb.y) / 2 - 6));
      label.setAttribute("class", "mult");
      label.textContent = String(arrow.mult);
      svg.appendChild(label);
    }
  }

  for (const v of view.vertices) {
    const { x, y } = xy(v);
    const group = document.createElementNS(svgns, "g");
    const shape = document.createElementNS(svgns, v.frozen ? "rect" : "circle");
    if (v.frozen) {
      shape.setAttribute("x", String(x - 22));
      shape.setAttribute("y", String(y - 16));
      shape.setAttribute("width", "44");
      shape.setAttribute("height", "32");
    } else {
      shape.setAttribute("cx", String(x));
      shape.setAttribute("cy", String(y));
      shape.setAttribute("r", "20");
    }
    shape.setAttribute("class", v.frozen ? "vertex frozen" : "vertex mutable");
    group.appendChild(shape);
    const name = document.createElementNS(svgns, "text");
    name.setAttribute("x", String(x));
    name.setAttribute("y", String(y + 4));
    name.setAttribute("class", "vertex-name");
    name.textContent = v.id;
    group.appendChild(name);
    const label = document.createElementNS(svgns, "text");
    label.setAttribute("x", String(x));
    label.setAttribute("y", String(y + 38));
    label.setAttribute("class", "vertex-label");
    label.textContent = v.labelText;
    group.appendChild(label);
    if (!v.frozen) {
      group.addEventListener("click", () => mutate(v.id));
      group.setAttribute("class", "clickable");
    }
    svg.appendChild(group);
  }
  host.appendChild(svg);

  const logBox = document.getElementById("log")!;
  logBox.innerHTML = "";
  view.logPanel.forEach((entry, idx) => {
    const row = el("li", idx === view.logPanel.length - 1 ? "latest" : "");
    row.textContent = entry;
    logBox.appendChild(row);
  });
  document.getElementById("steps")!.textContent = `${view.steps} step(s)`;
}

async function mutate(vertex: string): Promise<void> {
  try {
    await client.mutate(vertex);
    await refresh();
  } catch (err) {
    // incomparable exchanges come back verbatim with the failed record
    banner(String(err instanceof BackendError ? JSON.stringify(err.detail) : err));
  }
}

function wire(): void {
  document.getElementById("load-band")!.addEventListener("click", async () => {
    const xi = (document.getElementById("xi") as HTMLInputElement).value
      .split(",")
      .map((v) => parseInt(v.trim(), 10));
    const r = parseInt((document.getElementById("r") as HTMLInputElement).value, 10) || 1;
    try {
      await client.load({ xi, r });
      await refresh();
    } catch (err) {
      banner(String(err));
    }
  });
  document.getElementById("load-grid")!.addEventListener("click", async () => {
    const n = parseInt((document.getElementById("n") as HTMLInputElement).value, 10);
    const ell = parseInt((document.getElementById("ell") as HTMLInputElement).value, 10);
    try {
      await client.load({ n, ell });
      await refresh();
    } catch (err) {
      banner(String(err));
    }
  });
  document.getElementById("undo")!.addEventListener("click", async () => {
    try {
      await client.undo();
      await refresh();
    } catch (err) {
      banner(String(err instanceof BackendError ? err.detail : err));
    }
  });
  void refresh();
}

document.addEventListener("DOMContentLoaded", wire);
