// Session-store behaviour: the plan-over-baseline invariant, undo as
// pop+replay, stale-response discarding, and plan file round-trips.

import { describe, expect, it } from "vitest";

import { Session, applyChanges } from "../src/session";
import type { MoveDoc } from "../src/types";
import { FakeApi, TINY_MODEL } from "./fakes";

const MOVE_1: MoveDoc = { dependency: "d1", endpoint: "dependee", new_actor: "c" };
const MOVE_2: MoveDoc = { dependency: "d2", endpoint: "depender", new_actor: "a" };

async function loadedSession(api = new FakeApi()): Promise<Session> {
  const session = new Session(api.asClient());
  await session.loadText("anything");
  return session;
}

describe("loading", () => {
  it("adopts the validated model and its first named scope", async () => {
    const session = await loadedSession();
    const state = session.getState();
    expect(state.status).toBe("ready");
    expect(state.model?.name).toBe("tiny");
    expect(state.scope).toBe("focus");
    expect(state.analysis?.rows).toHaveLength(3);
    expect(state.moves).toEqual([]);
  });
});

describe("accept and undo", () => {
  it("replaying the plan over the baseline reproduces the current model", async () => {
    const session = await loadedSession();
    const preview = await session.propose(MOVE_1);
    await session.accept(preview);
    const second = await session.propose(MOVE_2);
    await session.accept(second);

    const state = session.getState();
    expect(state.moves).toEqual([MOVE_1, MOVE_2]);
    const replayed = applyChanges(state.baseline!, [
      { dependency: "d1", endpoint: "dependee", old_actor: "b", new_actor: "c" },
      { dependency: "d2", endpoint: "depender", old_actor: "c", new_actor: "a" },
    ]);
    expect(state.model).toEqual(replayed);
  });

  it("undo restores the exact pre-accept table, n times", async () => {
    const session = await loadedSession();
    const tables = [session.getState().analysis];
    for (const move of [MOVE_1, MOVE_2]) {
      const preview = await session.propose(move);
      await session.accept(preview);
      tables.push(session.getState().analysis);
    }
    expect(tables[1]).not.toEqual(tables[0]);
    expect(tables[2]).not.toEqual(tables[1]);

    await session.undo();
    expect(session.getState().analysis).toEqual(tables[1]);
    expect(session.getState().moves).toEqual([MOVE_1]);
    await session.undo();
    expect(session.getState().analysis).toEqual(tables[0]);
    expect(session.getState().moves).toEqual([]);
    expect(session.getState().model).toEqual(session.getState().baseline);
    await session.undo(); // no-op on an empty plan
    expect(session.getState().analysis).toEqual(tables[0]);
  });

  it("propose alone changes no state", async () => {
    const session = await loadedSession();
    const before = session.getState();
    await session.propose(MOVE_1);
    expect(session.getState()).toEqual(before);
  });
});

describe("stale responses", () => {
  it("drops an older in-flight analysis that resolves after a newer one", async () => {
    const api = new FakeApi();
    const session = new Session(api.asClient());
    await session.loadText("anything");

    let releaseFirst: () => void = () => {};
    const gate = new Promise<void>((resolve) => {
      releaseFirst = resolve;
    });
    api.analyzeDelay = () => gate; // only the next analyze call stalls
    const first = session.setScope("all");
    api.analyzeDelay = null;
    const second = session.setScope("focus");
    await second;
    expect(session.getState().scope).toBe("focus");
    releaseFirst();
    await first;
    // The slower, older response must not clobber the newer state.
    expect(session.getState().scope).toBe("focus");
  });
});

describe("plan files", () => {
  it("exports the accepted moves and re-imports to the same state", async () => {
    const session = await loadedSession();
    const preview = await session.propose(MOVE_1);
    await session.accept(preview);
    const file = session.exportPlan();
    expect(file).toEqual({ format_version: 1, moves: [MOVE_1] });

    const fresh = await loadedSession();
    await fresh.importPlan(file);
    expect(fresh.getState().moves).toEqual([MOVE_1]);
    expect(fresh.getState().model).toEqual(session.getState().model);
    expect(fresh.getState().analysis).toEqual(session.getState().analysis);
  });

  it("rejects malformed plan files", async () => {
    const session = await loadedSession();
    await expect(
      session.importPlan({ format_version: 2, moves: [] }),
    ).rejects.toThrow(/format_version/);
    await expect(
      session.importPlan({
        format_version: 1,
        moves: [{ dependency: "d1", endpoint: "sideways", new_actor: "c" } as unknown as MoveDoc],
      }),
    ).rejects.toThrow(/malformed/);
  });
});

describe("applyChanges", () => {
  it("reassigns endpoints on a copy and leaves the baseline alone", () => {
    const model = structuredClone(TINY_MODEL);
    const changed = applyChanges(model, [
      { dependency: "d1", endpoint: "dependee", old_actor: "b", new_actor: "c" },
    ]);
    expect(changed.dependencies[0]!.dependee).toBe("c");
    expect(model.dependencies[0]!.dependee).toBe("b");
    expect(() =>
      applyChanges(model, [
        { dependency: "ghost", endpoint: "dependee", old_actor: "b", new_actor: "c" },
      ]),
    ).toThrow(/unknown dependency/);
  });
});
