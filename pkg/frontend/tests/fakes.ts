// In-memory stand-in for the analysis service.  It does no metric maths:
// every "score" it returns is a fingerprint of the model state it was asked
// about, which is exactly what the session-store tests need to check that
// displayed data always tracks the service's answer for the current state.

import type { ApiClient } from "../src/api";
import type {
  AnalysisDoc,
  ChangeDoc,
  MetricsRowDoc,
  ModelDoc,
  MoveDoc,
  PlanDoc,
  ValidateDoc,
} from "../src/types";

export const TINY_MODEL: ModelDoc = {
  format_version: 1,
  name: "tiny",
  actors: [
    { id: "a", name: "Alpha", kind: "role", tags: ["work"] },
    { id: "b", name: "Beta", kind: "role", tags: ["work"] },
    { id: "c", name: "Gamma", kind: "role", tags: ["work"] },
  ],
  dependencies: [
    { id: "d1", depender: "a", dependee: "b", dependum: { name: "one", kind: "task", tags: ["work"] } },
    { id: "d2", depender: "c", dependee: "b", dependum: { name: "two", kind: "task", tags: ["work"] } },
  ],
  sr: [],
  scopes: [{ name: "focus", actors: ["a", "b", "c"] }],
};

function fingerprint(model: ModelDoc): string {
  return model.dependencies.map((dep) => `${dep.id}:${dep.depender}>${dep.dependee}`).join("|");
}

function rowsFor(model: ModelDoc): MetricsRowDoc[] {
  const stamp = fingerprint(model);
  return model.actors.map((actor, index) => ({
    actor: actor.id,
    out_deps: index,
    dependees: index,
    vm: `vm(${actor.id})@${stamp}`,
    vm_exact: `${index}/1`,
    in_deps: index,
    dependers: index,
    cm: stamp.length + index,
  }));
}

export class FakeApi {
  analyzeCalls = 0;
  whatifCalls = 0;
  analyzeDelay: (() => Promise<void>) | null = null;

  async validateText(_text: string): Promise<ValidateDoc> {
    return { model: structuredClone(TINY_MODEL), violations: [] };
  }

  async validateModel(model: ModelDoc): Promise<ValidateDoc> {
    return { model: structuredClone(model), violations: [] };
  }

  async analyze(model: ModelDoc, scope: string | string[]): Promise<AnalysisDoc> {
    this.analyzeCalls += 1;
    if (this.analyzeDelay) await this.analyzeDelay();
    const scopeIds = Array.isArray(scope) ? scope : model.actors.map((actor) => actor.id);
    return {
      scope: scopeIds,
      rows: rowsFor(model),
      hotspots: { most_vulnerable: [model.actors[0]!.id], most_critical: [model.actors.at(-1)!.id] },
    };
  }

  async whatif(model: ModelDoc, _scope: string | string[], moves: MoveDoc[]): Promise<PlanDoc> {
    this.whatifCalls += 1;
    const work = structuredClone(model);
    const changes: ChangeDoc[] = [];
    for (const move of moves) {
      const dep = work.dependencies.find((d) => d.id === move.dependency);
      if (!dep) throw new Error(`unknown dependency ${move.dependency}`);
      changes.push({
        dependency: move.dependency,
        endpoint: move.endpoint,
        old_actor: dep[move.endpoint],
        new_actor: move.new_actor,
      });
      dep[move.endpoint] = move.new_actor;
    }
    return {
      moves,
      verdicts: moves.map(() => ({
        feasible: true,
        reasons: [],
        receiver_before: { vm: "1.0", vm_exact: "1/1", cm: 1 },
        receiver_after: { vm: "2.0", vm_exact: "2/1", cm: 2 },
      })),
      advisories: [],
      table_before: rowsFor(model),
      table_after: rowsFor(work),
      changes,
    };
  }

  async recommend(): Promise<PlanDoc> {
    throw new Error("not used in these tests");
  }

  asClient(): ApiClient {
    return this as unknown as ApiClient;
  }
}
