// Pure view model: a function of the last /seed and /log responses.

import type { MonomialJson, RecordJson, SeedJson } from "./api.js";

export interface VertexView {
  id: string;
  col: number;
  row: number;
  frozen: boolean;
  labelText: string;
  labelJson: string; // canonical bytes, compared verbatim with the backend
}

export interface ArrowView {
  from: string;
  to: string;
  mult: number;
}

export interface SessionView {
  kind: "band" | "grid";
  columns: number;
  rows: number;
  vertices: VertexView[];
  arrows: ArrowView[];
  logPanel: string[];
  steps: number;
}

export function monomialText(m: MonomialJson): string {
  if (m.length === 0) return "1";
  return m
    .map(([i, s, e]) => `Y[${i},${s}]` + (e !== 1 ? `^${e}` : ""))
    .join(" * ");
}

function bandPosition(id: string): { col: number; row: number } {
  if (id.endsWith("''")) return { col: parseInt(id.slice(0, -2), 10), row: 3 };
  if (id.endsWith("'")) return { col: parseInt(id.slice(0, -1), 10), row: 1 };
  return { col: parseInt(id, 10), row: 2 };
}

function gridPosition(id: string): { col: number; row: number } {
  const [i, k] = id.split(",");
  return { col: parseInt(i, 10), row: parseInt(k, 10) };
}

export function describeRecord(rec: RecordJson): string {
  const side = rec.chosen === "out" ? "out-product" : "in-product";
  return (
    `mutate ${rec.vertex}: ${monomialText(rec.old)} -> ${monomialText(rec.new)}` +
    ` (max side: ${side}; in = ${monomialText(rec.p_in)}; out = ${monomialText(rec.p_out)})`
  );
}

export function render(seed: SeedJson, log: RecordJson[]): SessionView {
  const frozen = new Set(seed.quiver.frozen);
  const locate = seed.kind === "band" ? bandPosition : gridPosition;
  const vertices = seed.quiver.vertices.map((id) => {
    const { col, row } = locate(id);
    const label = seed.labels[id] ?? [];
    return {
      id,
      col,
      row,
      frozen: frozen.has(id),
      labelText: monomialText(label),
      labelJson: JSON.stringify(label),
    };
  });
  const arrows = seed.quiver.arrows.map(([from, to, mult]) => ({ from, to, mult }));
  return {
    kind: seed.kind,
    columns: Math.max(0, ...vertices.map((v) => v.col)),
    rows: Math.max(0, ...vertices.map((v) => v.row)),
    vertices,
    arrows,
    logPanel: log.map(describeRecord),
    steps: seed.steps,
  };
}
