// Metric table rendering.  Every cell shows a value verbatim from the
// service; numeric parsing happens only to pick heat-colour bins.

import type { AnalysisDoc, MetricsRowDoc } from "./types";

const COLUMNS: { key: keyof MetricsRowDoc; label: string }[] = [
  { key: "actor", label: "actor" },
  { key: "out_deps", label: "out" },
  { key: "dependees", label: "dependees" },
  { key: "vm", label: "vm" },
  { key: "in_deps", label: "in" },
  { key: "dependers", label: "dependers" },
  { key: "cm", label: "cm" },
];

function heatClass(value: number, min: number, max: number): string {
  if (max <= min) return "heat-0";
  const ratio = (value - min) / (max - min);
  if (ratio >= 0.999) return "heat-3";
  if (ratio >= 0.66) return "heat-2";
  if (ratio >= 0.33) return "heat-1";
  return "heat-0";
}

export function actorLabel(analysisActorId: string, names: Map<string, string>): string {
  return names.get(analysisActorId) ?? analysisActorId;
}

export function renderMetricsTable(
  container: HTMLElement,
  analysis: AnalysisDoc,
  names: Map<string, string>,
): void {
  container.textContent = "";
  const table = document.createElement("table");
  table.className = "metrics";
  const head = table.createTHead().insertRow();
  for (const column of COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column.label;
    head.appendChild(th);
  }
  const vulnerable = new Set(analysis.hotspots.most_vulnerable);
  const critical = new Set(analysis.hotspots.most_critical);
  const vms = analysis.rows.map((row) => Number.parseFloat(row.vm));
  const cms = analysis.rows.map((row) => row.cm);
  const [vmMin, vmMax] = [Math.min(...vms), Math.max(...vms)];
  const [cmMin, cmMax] = [Math.min(...cms), Math.max(...cms)];

  const body = table.createTBody();
  for (const row of analysis.rows) {
    const tr = body.insertRow();
    tr.dataset.actor = row.actor;
    for (const column of COLUMNS) {
      const td = tr.insertCell();
      td.dataset.col = String(column.key);
      if (column.key === "actor") {
        const name = document.createElement("span");
        name.textContent = actorLabel(row.actor, names);
        td.appendChild(name);
        if (vulnerable.has(row.actor)) {
          td.appendChild(badge("most vulnerable", "badge-vulnerable"));
        }
        if (critical.has(row.actor)) {
          td.appendChild(badge("most critical", "badge-critical"));
        }
      } else {
        td.textContent = String(row[column.key]);
        if (column.key === "vm") {
          td.className = heatClass(Number.parseFloat(row.vm), vmMin, vmMax);
        } else if (column.key === "cm") {
          td.className = heatClass(row.cm, cmMin, cmMax);
        }
      }
    }
  }
  container.appendChild(table);
}

function badge(text: string, cls: string): HTMLElement {
  const span = document.createElement("span");
  span.className = `badge ${cls}`;
  span.textContent = text;
  return span;
}

/** Rows whose rendered values differ between two tables (string compare). */
export function changedRows(
  before: MetricsRowDoc[],
  after: MetricsRowDoc[],
): { actor: string; before: MetricsRowDoc | null; after: MetricsRowDoc }[] {
  const index = new Map(before.map((row) => [row.actor, row]));
  const changed: { actor: string; before: MetricsRowDoc | null; after: MetricsRowDoc }[] = [];
  for (const row of after) {
    const previous = index.get(row.actor) ?? null;
    if (!previous || JSON.stringify(previous) !== JSON.stringify(row)) {
      changed.push({ actor: row.actor, before: previous, after: row });
    }
  }
  return changed;
}
