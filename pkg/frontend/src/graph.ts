// Compact node-link view: actors on a ring, one edge per dependency
// (depender -> dependee), dependum details in the hover title.  Pure SVG,
// deterministic layout (actors sorted by id around the circle).

import type { AnalysisDoc, ModelDoc } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 640;
const RADIUS = 250;

function positions(model: ModelDoc): Map<string, { x: number; y: number }> {
  const ids = [...model.actors.map((actor) => actor.id)].sort();
  const center = SIZE / 2;
  const step = (2 * Math.PI) / Math.max(1, ids.length);
  const located = new Map<string, { x: number; y: number }>();
  ids.forEach((id, index) => {
    const angle = index * step - Math.PI / 2;
    located.set(id, {
      x: center + RADIUS * Math.cos(angle),
      y: center + RADIUS * Math.sin(angle),
    });
  });
  return located;
}

export function renderGraph(
  container: HTMLElement,
  model: ModelDoc,
  analysis: AnalysisDoc | null,
  selection: string | null,
  onSelect: (dependencyId: string) => void,
): void {
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("class", "graph");

  const defs = document.createElementNS(SVG_NS, "defs");
  const marker = document.createElementNS(SVG_NS, "marker");
  marker.setAttribute("id", "arrow");
  marker.setAttribute("viewBox", "0 0 10 10");
  marker.setAttribute("refX", "28");
  marker.setAttribute("refY", "5");
  marker.setAttribute("markerWidth", "7");
  marker.setAttribute("markerHeight", "7");
  marker.setAttribute("orient", "auto-start-reverse");
  const tip = document.createElementNS(SVG_NS, "path");
  tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
  tip.setAttribute("class", "arrow-tip");
  marker.appendChild(tip);
  defs.appendChild(marker);
  svg.appendChild(defs);

  const located = positions(model);
  const vulnerable = new Set(analysis?.hotspots.most_vulnerable ?? []);
  const critical = new Set(analysis?.hotspots.most_critical ?? []);

  for (const dep of model.dependencies) {
    const from = located.get(dep.depender);
    const to = located.get(dep.dependee);
    if (!from || !to) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(from.x));
    line.setAttribute("y1", String(from.y));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y));
    line.setAttribute("marker-end", "url(#arrow)");
    line.dataset.dependency = dep.id;
    line.setAttribute(
      "class",
      dep.id === selection ? "edge edge-selected" : "edge",
    );
    const title = document.createElementNS(SVG_NS, "title");
    const tags = dep.dependum.tags.length ? ` [${dep.dependum.tags.join(", ")}]` : "";
    title.textContent = `${dep.id}: ${dep.depender} -> ${dep.dependee} (${dep.dependum.kind}: ${dep.dependum.name})${tags}`;
    line.appendChild(title);
    line.addEventListener("click", () => onSelect(dep.id));
    svg.appendChild(line);
  }

  for (const actor of model.actors) {
    const at = located.get(actor.id);
    if (!at) continue;
    const group = document.createElementNS(SVG_NS, "g");
    group.dataset.actor = actor.id;
    const classes = ["actor"];
    if (vulnerable.has(actor.id)) classes.push("actor-vulnerable");
    if (critical.has(actor.id)) classes.push("actor-critical");
    group.setAttribute("class", classes.join(" "));
    const node = document.createElementNS(SVG_NS, "ellipse");
    node.setAttribute("cx", String(at.x));
    node.setAttribute("cy", String(at.y));
    node.setAttribute("rx", "26");
    node.setAttribute("ry", "16");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${actor.name} (${actor.kind})`;
    node.appendChild(title);
    group.appendChild(node);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(at.x));
    label.setAttribute("y", String(at.y + 30));
    label.setAttribute("text-anchor", "middle");
    label.textContent = shorten(actor.name);
    group.appendChild(label);
    svg.appendChild(group);
  }

  container.appendChild(svg);
}

function shorten(name: string): string {
  return name.length > 22 ? `${name.slice(0, 20)}…` : name;
}
