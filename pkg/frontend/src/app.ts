// Workbench wiring: loader pane, graph + heat table, plan panel.

import { ApiClient } from "./api";
import { renderGraph } from "./graph";
import { renderPlanPanel } from "./panel";
import { MovePreview, Session } from "./session";
import { renderMetricsTable } from "./table";
import type { MoveDoc, PlanFileDoc } from "./types";

export class App {
  readonly session: Session;
  private preview: MovePreview | null = null;
  private busy = false;

  private readonly loaderPane: HTMLElement;
  private readonly graphPane: HTMLElement;
  private readonly tablePane: HTMLElement;
  private readonly planPane: HTMLElement;
  private readonly statusLine: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    api: ApiClient,
    private readonly download: (name: string, content: string) => void = saveFile,
  ) {
    this.session = new Session(api);
    root.innerHTML = "";
    root.appendChild(this.buildHeader());
    const layout = document.createElement("div");
    layout.className = "layout";
    this.loaderPane = pane("loader-pane");
    this.graphPane = pane("graph-pane");
    this.tablePane = pane("table-pane");
    this.planPane = pane("plan-pane");
    const center = document.createElement("div");
    center.className = "center";
    center.appendChild(this.graphPane);
    center.appendChild(this.tablePane);
    layout.appendChild(this.loaderPane);
    layout.appendChild(center);
    layout.appendChild(this.planPane);
    root.appendChild(layout);
    this.statusLine = document.createElement("div");
    this.statusLine.id = "status-line";
    root.appendChild(this.statusLine);

    this.session.subscribe(() => this.render());
    this.renderLoader();
    this.render();
  }

  private buildHeader(): HTMLElement {
    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "Dependency workbench";
    header.appendChild(title);
    return header;
  }

  private renderLoader(): void {
    this.loaderPane.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = "Model";
    this.loaderPane.appendChild(heading);

    const fileInput = document.createElement("input");
    fileInput.type = "file";
    fileInput.id = "model-file";
    fileInput.accept = ".istar,.json";
    fileInput.addEventListener("change", async () => {
      const file = fileInput.files?.[0];
      if (!file) return;
      const text = await file.text();
      void this.loadText(text, file.name.endsWith(".json"));
      fileInput.value = "";
    });
    this.loaderPane.appendChild(fileInput);

    const paste = document.createElement("textarea");
    paste.id = "model-paste";
    paste.rows = 10;
    paste.placeholder = 'model "..."\nactor "..."\ndep task "..." from "..." to "..."';
    this.loaderPane.appendChild(paste);

    const load = document.createElement("button");
    load.id = "load-model";
    load.textContent = "Load";
    load.addEventListener("click", () => void this.loadText(paste.value, false));
    this.loaderPane.appendChild(load);

    const errors = document.createElement("ul");
    errors.id = "load-errors";
    this.loaderPane.appendChild(errors);
  }

  async loadText(text: string, isStructured: boolean): Promise<void> {
    this.preview = null;
    if (isStructured) {
      await this.session.loadModel(JSON.parse(text));
    } else {
      await this.session.loadText(text);
    }
  }

  async propose(move: MoveDoc): Promise<void> {
    this.busy = true;
    this.render();
    try {
      this.preview = await this.session.propose(move);
      this.session.select(move.dependency);
    } catch (error) {
      this.setStatus(error instanceof Error ? error.message : String(error));
    } finally {
      this.busy = false;
      this.render();
    }
  }

  async accept(): Promise<void> {
    if (!this.preview) return;
    this.busy = true;
    this.render();
    try {
      await this.session.accept(this.preview);
      this.preview = null;
    } finally {
      this.busy = false;
      this.render();
    }
  }

  reject(): void {
    this.preview = null;
    this.render();
  }

  async undo(): Promise<void> {
    this.busy = true;
    this.render();
    try {
      await this.session.undo();
      this.preview = null;
    } finally {
      this.busy = false;
      this.render();
    }
  }

  exportPlan(): void {
    const plan = this.session.exportPlan();
    this.download("delegation-plan.json", JSON.stringify(plan, null, 2) + "\n");
  }

  async importPlanFile(file: File): Promise<void> {
    const text = await file.text();
    await this.importPlanText(text);
  }

  async importPlanText(text: string): Promise<void> {
    this.busy = true;
    this.render();
    try {
      const plan = JSON.parse(text) as PlanFileDoc;
      await this.session.importPlan(plan);
      this.preview = null;
    } catch (error) {
      this.setStatus(error instanceof Error ? error.message : String(error));
    } finally {
      this.busy = false;
      this.render();
    }
  }

  private setStatus(message: string): void {
    this.statusLine.textContent = message;
  }

  private render(): void {
    const state = this.session.getState();

    const errorList = this.loaderPane.querySelector("#load-errors");
    if (errorList) {
      errorList.textContent = "";
      for (const error of state.loadErrors) {
        const item = document.createElement("li");
        item.className = "load-error";
        const where = error.span
          ? `line ${error.span.line}, column ${error.span.column}: `
          : error.path
            ? `${error.path}: `
            : "";
        item.textContent = `${where}${error.message}`;
        errorList.appendChild(item);
      }
      if (state.lastFailure && state.loadErrors.length === 0) {
        const item = document.createElement("li");
        item.className = "load-error";
        item.textContent = state.lastFailure;
        errorList.appendChild(item);
      }
    }

    if (!state.model || !state.analysis) {
      this.graphPane.textContent = "";
      this.tablePane.textContent = "";
      this.planPane.textContent = "";
      const hint = document.createElement("p");
      hint.className = "empty-hint";
      hint.textContent =
        state.status === "loading" ? "loading…" : "Load a model to begin.";
      this.graphPane.appendChild(hint);
      return;
    }

    const names = new Map(state.model.actors.map((actor) => [actor.id, actor.name]));
    renderGraph(this.graphPane, state.model, state.analysis, state.selection, (id) => {
      this.session.select(id);
    });

    const scopeBar = document.createElement("div");
    scopeBar.className = "scope-bar";
    const scopeSelect = document.createElement("select");
    scopeSelect.id = "scope-select";
    for (const name of ["all", ...state.model.scopes.map((scope) => scope.name)]) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = `scope: ${name}`;
      scopeSelect.appendChild(option);
    }
    scopeSelect.value = state.scope;
    scopeSelect.addEventListener("change", () => void this.session.setScope(scopeSelect.value));
    scopeBar.appendChild(scopeSelect);

    this.tablePane.textContent = "";
    this.tablePane.appendChild(scopeBar);
    const tableHost = document.createElement("div");
    this.tablePane.appendChild(tableHost);
    renderMetricsTable(tableHost, state.analysis, names);

    renderPlanPanel(this.planPane, state, this.preview, this.busy, {
      onSelectDependency: (id) => this.session.select(id),
      onPropose: (move) => void this.propose(move),
      onAccept: () => void this.accept(),
      onReject: () => this.reject(),
      onUndo: () => void this.undo(),
      onExport: () => this.exportPlan(),
      onImport: (file) => void this.importPlanFile(file),
    });

    this.setStatus(
      `${state.model.name} — ${state.model.actors.length} actors, ` +
        `${state.model.dependencies.length} dependencies, plan of ${state.moves.length}`,
    );
  }
}

function pane(id: string): HTMLElement {
  const div = document.createElement("div");
  div.id = id;
  div.className = "pane";
  return div;
}

function saveFile(name: string, content: string): void {
  const blob = new Blob([content], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(url);
}
