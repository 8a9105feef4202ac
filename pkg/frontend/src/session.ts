// Client-side session: baseline model + ordered accepted moves.  The current
// model is always baseline-with-plan-replayed, so undo is pop + replay and a
// refresh loses nothing that an exported plan file cannot restore.
//
// The store does no metric arithmetic: every displayed number (vm, cm, table
// rows, hotspot sets) comes verbatim from a service response.

import { ApiClient } from "./api";
import type {
  AnalysisDoc,
  ChangeDoc,
  MetricsRowDoc,
  ModelDoc,
  MoveDoc,
  ParseErrorDoc,
  PlanDoc,
  PlanFileDoc,
  VerdictDoc,
} from "./types";

export interface MovePreview {
  move: MoveDoc;
  verdict: VerdictDoc;
  tableAfter: MetricsRowDoc[];
  plan: PlanDoc;
}

export interface SessionState {
  status: "empty" | "loading" | "ready" | "error";
  baseline: ModelDoc | null;
  model: ModelDoc | null;
  scope: string;
  moves: MoveDoc[];
  verdicts: VerdictDoc[];
  analysis: AnalysisDoc | null;
  selection: string | null;
  loadErrors: ParseErrorDoc[];
  lastFailure: string | null;
}

type Listener = (state: SessionState) => void;

export function cloneModel(model: ModelDoc): ModelDoc {
  return JSON.parse(JSON.stringify(model)) as ModelDoc;
}

/** Re-apply endpoint changes reported by the service to a baseline copy. */
export function applyChanges(baseline: ModelDoc, changes: ChangeDoc[]): ModelDoc {
  const model = cloneModel(baseline);
  const byId = new Map(model.dependencies.map((dep) => [dep.id, dep]));
  for (const change of changes) {
    const dep = byId.get(change.dependency);
    if (!dep) {
      throw new Error(`change references unknown dependency ${change.dependency}`);
    }
    dep[change.endpoint] = change.new_actor;
  }
  return model;
}

export class Session {
  private state: SessionState = {
    status: "empty",
    baseline: null,
    model: null,
    scope: "all",
    moves: [],
    verdicts: [],
    analysis: null,
    selection: null,
    loadErrors: [],
    lastFailure: null,
  };

  private listeners: Listener[] = [];
  private seq = 0;

  constructor(private readonly api: ApiClient) {}

  getState(): SessionState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(partial: Partial<SessionState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }

  /** New user intent: everything still in flight becomes stale. */
  private nextToken(): number {
    this.seq += 1;
    return this.seq;
  }

  private fresh(token: number): boolean {
    return token === this.seq;
  }

  async loadText(text: string): Promise<void> {
    const token = this.nextToken();
    this.emit({ status: "loading", loadErrors: [], lastFailure: null });
    try {
      const validated = await this.api.validateText(text);
      if (!this.fresh(token)) return;
      await this.adopt(token, validated.model);
    } catch (error) {
      if (!this.fresh(token)) return;
      this.failLoad(error);
    }
  }

  async loadModel(model: ModelDoc): Promise<void> {
    const token = this.nextToken();
    this.emit({ status: "loading", loadErrors: [], lastFailure: null });
    try {
      const validated = await this.api.validateModel(model);
      if (!this.fresh(token)) return;
      await this.adopt(token, validated.model);
    } catch (error) {
      if (!this.fresh(token)) return;
      this.failLoad(error);
    }
  }

  private async adopt(token: number, model: ModelDoc): Promise<void> {
    const scope = model.scopes.length > 0 ? model.scopes[0]!.name : "all";
    const analysis = await this.api.analyze(model, scope);
    if (!this.fresh(token)) return;
    this.emit({
      status: "ready",
      baseline: model,
      model,
      scope,
      moves: [],
      verdicts: [],
      analysis,
      selection: null,
      loadErrors: [],
      lastFailure: null,
    });
  }

  private failLoad(error: unknown): void {
    const parseErrors =
      error instanceof Error && "parseErrors" in error
        ? (error as { parseErrors(): ParseErrorDoc[] }).parseErrors()
        : [];
    this.emit({
      status: this.state.baseline ? "ready" : "error",
      loadErrors: parseErrors,
      lastFailure: error instanceof Error ? error.message : String(error),
    });
  }

  async setScope(scope: string): Promise<void> {
    if (!this.state.model) return;
    const token = this.nextToken();
    const analysis = await this.api.analyze(this.state.model, scope);
    if (!this.fresh(token)) return;
    this.emit({ scope, analysis });
  }

  select(dependencyId: string | null): void {
    this.emit({ selection: dependencyId });
  }

  /** Score one candidate on top of the accepted plan; no state change. */
  async propose(move: MoveDoc): Promise<MovePreview> {
    const { baseline, scope } = this.state;
    if (!baseline) throw new Error("no model loaded");
    const plan = await this.api.whatif(baseline, scope, [...this.state.moves, move]);
    const verdict = plan.verdicts[plan.verdicts.length - 1]!;
    return { move, verdict, tableAfter: plan.table_after, plan };
  }

  /** Append a proposed move to the plan and refresh from the service. */
  async accept(preview: MovePreview): Promise<void> {
    const { baseline, scope } = this.state;
    if (!baseline) throw new Error("no model loaded");
    const token = this.nextToken();
    const model = applyChanges(baseline, preview.plan.changes);
    const analysis = await this.api.analyze(model, scope);
    if (!this.fresh(token)) return;
    this.emit({
      model,
      moves: [...this.state.moves, preview.move],
      verdicts: [...this.state.verdicts, preview.verdict],
      analysis,
      selection: null,
    });
  }

  /** Pop the last accepted move and replay the remainder over the baseline. */
  async undo(): Promise<void> {
    const { baseline, scope } = this.state;
    if (!baseline || this.state.moves.length === 0) return;
    const token = this.nextToken();
    const moves = this.state.moves.slice(0, -1);
    const replayed = await this.replay(baseline, scope, moves);
    if (!this.fresh(token)) return;
    this.emit(replayed);
  }

  private async replay(
    baseline: ModelDoc,
    scope: string,
    moves: MoveDoc[],
  ): Promise<Partial<SessionState>> {
    if (moves.length === 0) {
      const analysis = await this.api.analyze(baseline, scope);
      return { model: baseline, moves: [], verdicts: [], analysis };
    }
    const plan = await this.api.whatif(baseline, scope, moves);
    const model = applyChanges(baseline, plan.changes);
    const analysis = await this.api.analyze(model, scope);
    return { model, moves, verdicts: plan.verdicts, analysis };
  }

  exportPlan(): PlanFileDoc {
    return {
      format_version: 1,
      moves: this.state.moves.map((move) => ({ ...move })),
    };
  }

  /** Replace the current plan with an imported file and replay it. */
  async importPlan(file: PlanFileDoc): Promise<void> {
    const { baseline, scope } = this.state;
    if (!baseline) throw new Error("no model loaded");
    if (file.format_version !== 1 || !Array.isArray(file.moves)) {
      throw new Error("not a plan file (expected format_version 1 with a moves array)");
    }
    for (const move of file.moves) {
      if (
        typeof move.dependency !== "string" ||
        (move.endpoint !== "depender" && move.endpoint !== "dependee") ||
        typeof move.new_actor !== "string"
      ) {
        throw new Error("plan file contains a malformed move");
      }
    }
    const token = this.nextToken();
    const replayed = await this.replay(baseline, scope, file.moves);
    if (!this.fresh(token)) return;
    this.emit({ ...replayed, selection: null });
  }
}
