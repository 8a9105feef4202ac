// Move proposal panel: pick a dependency endpoint and a receiving actor, have
// the service score it, then accept into the plan or discard.

import type { MovePreview, SessionState } from "./session";
import { changedRows } from "./table";
import type { MetricsRowDoc, MoveDoc } from "./types";

export interface PanelCallbacks {
  onSelectDependency: (id: string | null) => void;
  onPropose: (move: MoveDoc) => void;
  onAccept: () => void;
  onReject: () => void;
  onUndo: () => void;
  onExport: () => void;
  onImport: (file: File) => void;
}

export function renderPlanPanel(
  container: HTMLElement,
  state: SessionState,
  preview: MovePreview | null,
  busy: boolean,
  callbacks: PanelCallbacks,
): void {
  container.textContent = "";
  const { model } = state;
  if (!model) return;

  const heading = document.createElement("h2");
  heading.textContent = "Delegation plan";
  container.appendChild(heading);

  // --- candidate form -----------------------------------------------------
  const form = document.createElement("div");
  form.className = "candidate-form";

  const depSelect = document.createElement("select");
  depSelect.id = "dependency-select";
  const blank = document.createElement("option");
  blank.value = "";
  blank.textContent = "choose a dependency…";
  depSelect.appendChild(blank);
  for (const dep of model.dependencies) {
    const option = document.createElement("option");
    option.value = dep.id;
    option.textContent = `${dep.depender} -> ${dep.dependee}: ${dep.dependum.kind} "${dep.dependum.name}"`;
    depSelect.appendChild(option);
  }
  depSelect.value = state.selection ?? "";
  depSelect.addEventListener("change", () =>
    callbacks.onSelectDependency(depSelect.value || null),
  );
  form.appendChild(labelled("Dependency", depSelect));

  const endpointSelect = document.createElement("select");
  endpointSelect.id = "endpoint-select";
  for (const endpoint of ["dependee", "depender"]) {
    const option = document.createElement("option");
    option.value = endpoint;
    option.textContent =
      endpoint === "dependee" ? "dependee (transfer responsibility)" : "depender (transfer reliance)";
    endpointSelect.appendChild(option);
  }
  form.appendChild(labelled("Endpoint to reassign", endpointSelect));

  const targetSelect = document.createElement("select");
  targetSelect.id = "target-select";
  form.appendChild(labelled("New actor", targetSelect));

  const refreshTargets = () => {
    targetSelect.textContent = "";
    const dep = model.dependencies.find((d) => d.id === depSelect.value);
    for (const actor of model.actors) {
      if (dep) {
        const holder = endpointSelect.value === "depender" ? dep.depender : dep.dependee;
        const other = endpointSelect.value === "depender" ? dep.dependee : dep.depender;
        // Reassigning to the current holder is a no-op and to the opposite
        // endpoint a self-dependency; neither is offered.
        if (actor.id === holder || actor.id === other) continue;
      }
      const option = document.createElement("option");
      option.value = actor.id;
      option.textContent = actor.name;
      targetSelect.appendChild(option);
    }
  };
  refreshTargets();
  depSelect.addEventListener("change", refreshTargets);
  endpointSelect.addEventListener("change", refreshTargets);

  const scoreButton = document.createElement("button");
  scoreButton.id = "score-move";
  scoreButton.textContent = "Score move";
  scoreButton.disabled = busy || !depSelect.value || !targetSelect.value;
  scoreButton.addEventListener("click", () => {
    if (!depSelect.value || !targetSelect.value) return;
    callbacks.onPropose({
      dependency: depSelect.value,
      endpoint: endpointSelect.value as MoveDoc["endpoint"],
      new_actor: targetSelect.value,
    });
  });
  form.appendChild(scoreButton);
  container.appendChild(form);

  // --- preview ------------------------------------------------------------
  if (preview) {
    container.appendChild(renderPreview(state, preview, busy, callbacks));
  }

  // --- accepted moves -----------------------------------------------------
  const listHeading = document.createElement("h3");
  listHeading.textContent = `Accepted moves (${state.moves.length})`;
  container.appendChild(listHeading);
  const list = document.createElement("ol");
  list.id = "accepted-moves";
  state.moves.forEach((move, index) => {
    const item = document.createElement("li");
    const verdict = state.verdicts[index];
    const status = verdict?.feasible ? "ok" : "overridden";
    item.textContent = `${move.dependency}: ${move.endpoint} -> ${move.new_actor} (${status})`;
    list.appendChild(item);
  });
  container.appendChild(list);

  const controls = document.createElement("div");
  controls.className = "plan-controls";
  const undo = document.createElement("button");
  undo.id = "undo-move";
  undo.textContent = "Undo last";
  undo.disabled = busy || state.moves.length === 0;
  undo.addEventListener("click", callbacks.onUndo);
  controls.appendChild(undo);

  const exportButton = document.createElement("button");
  exportButton.id = "export-plan";
  exportButton.textContent = "Export plan";
  exportButton.disabled = busy;
  exportButton.addEventListener("click", callbacks.onExport);
  controls.appendChild(exportButton);

  const importInput = document.createElement("input");
  importInput.type = "file";
  importInput.id = "import-plan";
  importInput.accept = "application/json";
  importInput.addEventListener("change", () => {
    const file = importInput.files?.[0];
    if (file) callbacks.onImport(file);
    importInput.value = "";
  });
  controls.appendChild(importInput);
  container.appendChild(controls);
}

function renderPreview(
  state: SessionState,
  preview: MovePreview,
  busy: boolean,
  callbacks: PanelCallbacks,
): HTMLElement {
  const box = document.createElement("div");
  box.id = "move-preview";
  box.className = preview.verdict.feasible ? "preview feasible" : "preview infeasible";

  const title = document.createElement("h3");
  title.textContent = preview.verdict.feasible ? "Feasible move" : "Infeasible move";
  box.appendChild(title);

  const chips = document.createElement("div");
  chips.className = "chips";
  if (preview.verdict.feasible) {
    chips.appendChild(chip("no rule fires", "chip-ok"));
  }
  for (const reason of preview.verdict.reasons) {
    const c = chip(readableReason(reason.code), "chip-bad");
    c.title = reason.message;
    chips.appendChild(c);
  }
  box.appendChild(chips);

  const receiver = document.createElement("p");
  receiver.className = "receiver-delta";
  const before = preview.verdict.receiver_before;
  const after = preview.verdict.receiver_after;
  if (before && after) {
    receiver.textContent =
      `receiver vm ${before.vm} -> ${after.vm}, cm ${before.cm} -> ${after.cm}`;
  }
  box.appendChild(receiver);

  const deltas = changedRows(state.analysis?.rows ?? [], preview.tableAfter);
  const deltaList = document.createElement("ul");
  deltaList.className = "delta-table";
  for (const delta of deltas) {
    const item = document.createElement("li");
    const from = delta.before
      ? `vm ${delta.before.vm}, cm ${delta.before.cm}`
      : "(new row)";
    item.textContent = `${delta.actor}: ${from} -> vm ${delta.after.vm}, cm ${delta.after.cm}`;
    deltaList.appendChild(item);
  }
  box.appendChild(deltaList);

  const override = document.createElement("label");
  override.className = "override";
  const overrideBox = document.createElement("input");
  overrideBox.type = "checkbox";
  overrideBox.id = "override-toggle";
  override.appendChild(overrideBox);
  override.appendChild(document.createTextNode(" accept anyway (override)"));

  const accept = document.createElement("button");
  accept.id = "accept-move";
  accept.textContent = "Accept";
  accept.disabled = busy || !preview.verdict.feasible;
  overrideBox.addEventListener("change", () => {
    accept.disabled = busy || (!preview.verdict.feasible && !overrideBox.checked);
  });
  accept.addEventListener("click", callbacks.onAccept);

  const reject = document.createElement("button");
  reject.id = "reject-move";
  reject.textContent = "Reject";
  reject.disabled = busy;
  reject.addEventListener("click", callbacks.onReject);

  const actions = document.createElement("div");
  actions.className = "preview-actions";
  actions.appendChild(accept);
  actions.appendChild(reject);
  if (!preview.verdict.feasible) actions.appendChild(override);
  box.appendChild(actions);
  return box;
}

function chip(text: string, cls: string): HTMLElement {
  const span = document.createElement("span");
  span.className = `chip ${cls}`;
  span.textContent = text;
  return span;
}

export function readableReason(code: string): string {
  switch (code) {
    case "CREATES_MOST_VULNERABLE":
      return "would create a most-vulnerable actor";
    case "CREATES_MOST_CRITICAL":
      return "would create a most-critical actor";
    case "NOT_KNOWLEDGEABLE":
      return "receiver not knowledgeable";
    case "INVALID_MOVE":
      return "invalid move";
    default:
      return code;
  }
}

function labelled(text: string, control: HTMLElement): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  const caption = document.createElement("span");
  caption.textContent = text;
  wrap.appendChild(caption);
  wrap.appendChild(control);
  return wrap;
}
