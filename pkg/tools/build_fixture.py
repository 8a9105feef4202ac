#!/usr/bin/env python3
"""Construct and freeze the Civil Registry case-study fixture.

The case study fixes, for each of the nine front-line staff actors, four
degree counts: outgoing dependencies, distinct dependees, incoming
dependencies, distinct dependers.  Those counts do not pin down *who* sits on
the other end of each edge, so this script solves the constraint system by
construction: it lays out a concrete 16-actor, 50-edge graph, then verifies
every target by brute-force edge counting (a raw scan over the edge list,
independent of the library's degree queries).

It also verifies the frozen rebalancing plan end to end: the four endpoint
reassignments must land exactly on the expected post-rebalance profiles, and
afterwards every knowledgeable reassignment of the remaining critical actor's
dependencies must trip the most-vulnerable guard.

Run from the repository root::

    python tools/build_fixture.py          # verify and (re)write fixtures/
    python tools/build_fixture.py --check  # verify the frozen files only
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from charter_deps.delegation import (  # noqa: E402
    CREATES_MOST_VULNERABLE,
    DelegationMove,
    check_feasibility,
    evaluate_plan,
)
from charter_deps.dsl import parse_model, serialize_model  # noqa: E402
from charter_deps.model import (  # noqa: E402
    Actor,
    Dependency,
    Dependum,
    ModelDocument,
    ScopeDef,
    SDModel,
    validate_model,
)

FIXTURES = REPO / "fixtures"

# Front-line staff and their target counts:
# (outgoing, distinct dependees, incoming, distinct dependers)
STAFF_DEGREE_TARGETS = {
    "registration-officer-i": (4, 1, 5, 2),
    "registration-officer-ii": (4, 2, 3, 2),
    "registration-officer-iii": (3, 2, 2, 1),
    "assistant-registration-officer": (2, 2, 2, 1),
    "registration-verifier": (4, 1, 1, 1),
    "registration-clerk-window-23": (6, 3, 2, 1),
    "registration-clerk-window-24": (3, 2, 2, 1),
    "registration-clerk-window-25": (2, 1, 1, 1),
    "registration-clerk-window-26": (1, 1, 1, 1),
}

# After the four-move rebalancing plan (two reassignments away from
# Registration Officer I, two away from the Registration Verifier).
POST_PLAN_TARGETS = {
    "registration-officer-i": (3, 1, 4, 1),
    "registration-officer-ii": (4, 2, 3, 2),
    "registration-officer-iii": (3, 2, 2, 1),
    "assistant-registration-officer": (4, 2, 2, 1),
    "registration-verifier": (2, 1, 1, 1),
    "registration-clerk-window-23": (6, 3, 2, 1),
    "registration-clerk-window-24": (3, 2, 2, 1),
    "registration-clerk-window-25": (2, 1, 1, 1),
    "registration-clerk-window-26": (2, 1, 2, 2),
}

ACTORS = [
    # id, name, kind, service-area tags (what the actor is knowledgeable of)
    ("customer", "Customer", "role", []),
    ("treasury-office", "Treasury Office", "agent", ["fee-collection"]),
    ("health-office", "Health Office", "agent", ["medical-certification"]),
    ("post-office", "Post Office", "agent", ["mail-delivery"]),
    ("national-statistics-office", "National Statistics Office", "agent", ["document-endorsement"]),
    ("local-courier-personnel", "Local Courier Personnel", "agent", ["mail-delivery"]),
    (
        "other-local-civil-registry-offices",
        "Other Local Civil Registry Offices",
        "agent",
        ["out-of-town-registration"],
    ),
    (
        "registration-officer-i",
        "Registration Officer I",
        "position",
        ["death-registration", "late-death-registration"],
    ),
    (
        "registration-officer-ii",
        "Registration Officer II",
        "position",
        ["marriage-license", "court-decrees", "legal-instruments"],
    ),
    ("registration-officer-iii", "Registration Officer III", "position", ["document-endorsement"]),
    (
        "assistant-registration-officer",
        "Assistant Registration Officer",
        "position",
        ["marriage-license", "ra-9858", "ra-9255"],
    ),
    ("registration-verifier", "Registration Verifier", "role", ["ra-9858", "ra-9255"]),
    ("registration-clerk-window-23", "Registration Clerk (Window 23)", "role", ["birth-registration"]),
    ("registration-clerk-window-24", "Registration Clerk (Window 24)", "role", ["birth-registration"]),
    ("registration-clerk-window-25", "Registration Clerk (Window 25)", "role", ["foundling-registration"]),
    ("registration-clerk-window-26", "Registration Clerk (Window 26)", "role", ["late-death-registration"]),
]

ROI = "registration-officer-i"
ROII = "registration-officer-ii"
ROIII = "registration-officer-iii"
ARO = "assistant-registration-officer"
RV = "registration-verifier"
RC23 = "registration-clerk-window-23"
RC24 = "registration-clerk-window-24"
RC25 = "registration-clerk-window-25"
RC26 = "registration-clerk-window-26"
CUST = "customer"

EDGES = [
    # id, kind, dependum name, depender, dependee, tags
    # -- Registration Officer I: death registration cluster ------------------
    ("d-roi-late-death-docs", "resource", "late death registration documents", ROI, CUST, ["late-death-registration"]),
    ("d-roi-death-requirements", "resource", "death certificate requirements", ROI, CUST, ["death-registration"]),
    ("d-roi-death-fee", "task", "present death registration fee payment", ROI, CUST, ["death-registration"]),
    ("d-roi-burial-permit-application", "task", "submit burial permit application", ROI, CUST, ["death-registration"]),
    ("d-cust-death-registered", "goal", "processed on time death registration", CUST, ROI, ["death-registration"]),
    ("d-cust-death-certificate", "resource", "certified death certificate copy", CUST, ROI, ["death-registration"]),
    ("d-cust-burial-permit", "resource", "approved burial permit", CUST, ROI, ["death-registration"]),
    ("d-cust-death-record-check", "task", "verify archived death records", CUST, ROI, ["death-registration"]),
    ("d-rc24-late-death-endorsement", "task", "endorse late death registration filings", RC24, ROI, ["late-death-registration"]),
    # -- Registration Officer II: licenses, decrees, instruments -------------
    ("d-roii-license-fee", "task", "present marriage license fee payment", ROII, CUST, ["marriage-license"]),
    ("d-roii-decree-medical-records", "resource", "medical records for court decree annotation", ROII, "health-office", ["court-decrees"]),
    ("d-roii-decree-medical-findings", "task", "certify medical findings for adoption decrees", ROII, "health-office", ["court-decrees"]),
    ("d-roii-decree-medico-legal", "resource", "medico-legal endorsement for court decrees", ROII, "health-office", ["court-decrees"]),
    ("d-rc23-license-review", "goal", "approved marriage license applications", RC23, ROII, ["marriage-license"]),
    ("d-cust-instrument-registered", "goal", "registered legal instrument", CUST, ROII, ["legal-instruments"]),
    ("d-cust-instrument-copy", "resource", "certified legal instrument copy", CUST, ROII, ["legal-instruments"]),
    # -- Registration Officer III: endorsement of documents ------------------
    ("d-roiii-endorsement-requirements", "resource", "document endorsement requirements", ROIII, CUST, ["document-endorsement"]),
    ("d-roiii-endorsement-fee", "task", "present endorsement fee payment", ROIII, CUST, ["document-endorsement"]),
    ("d-roiii-archive-transmittal", "task", "receive endorsed civil registry documents", ROIII, "national-statistics-office", ["document-endorsement"]),
    ("d-cust-endorsement-complete", "goal", "endorsed documents at national archive", CUST, ROIII, ["document-endorsement"]),
    ("d-cust-endorsement-proof", "resource", "endorsement transmittal proof", CUST, ROIII, ["document-endorsement"]),
    # -- Assistant Registration Officer ---------------------------------------
    ("d-aro-license-documents", "resource", "marriage license application documents", ARO, CUST, ["marriage-license"]),
    ("d-aro-fee-remittance", "task", "remit collected registration fees", ARO, "treasury-office", ["fee-collection"]),
    ("d-rc23-license-signature", "task", "sign marriage license endorsements", RC23, ARO, ["marriage-license"]),
    ("d-rc23-license-interviews", "task", "conduct marriage license applicant interviews", RC23, ARO, ["marriage-license"]),
    # -- Registration Verifier: legitimation and surname filings -------------
    ("d-rv-legitimation-documents", "resource", "legitimation supporting documents", RV, CUST, ["ra-9858"]),
    ("d-rv-legitimation-fee", "task", "present legitimation processing fee", RV, CUST, ["ra-9858"]),
    ("d-rv-surname-documents", "resource", "paternity acknowledgment documents", RV, CUST, ["ra-9255"]),
    ("d-rv-surname-affidavit", "resource", "affidavit to use the father's surname", RV, CUST, ["ra-9255"]),
    ("d-cust-legitimation-registered", "goal", "registered child legitimation", CUST, RV, ["ra-9858"]),
    # -- Registration Clerk (Window 23): birth registration front desk --------
    ("d-rc23-birth-requirements", "resource", "birth registration requirements", RC23, CUST, ["birth-registration"]),
    ("d-rc23-birth-fee", "task", "present birth registration fee payment", RC23, CUST, ["birth-registration"]),
    ("d-rc23-birth-forms", "task", "sign accomplished birth certificate forms", RC23, CUST, ["birth-registration"]),
    ("d-cust-birth-registered", "goal", "processed on time birth registration", CUST, RC23, ["birth-registration"]),
    ("d-cust-birth-certificate", "resource", "certified birth certificate copy", CUST, RC23, ["birth-registration"]),
    # -- Registration Clerk (Window 24): delayed registrations ----------------
    ("d-rc24-delayed-birth-requirements", "resource", "delayed birth registration requirements", RC24, CUST, ["birth-registration"]),
    ("d-rc24-delayed-birth-posting", "task", "complete delayed registration posting period", RC24, CUST, ["birth-registration"]),
    ("d-cust-delayed-birth-registered", "goal", "registered delayed birth certificate", CUST, RC24, ["birth-registration"]),
    ("d-cust-delayed-birth-copy", "resource", "certified delayed registration copy", CUST, RC24, ["birth-registration"]),
    # -- Registration Clerk (Window 25): foundling registration ---------------
    ("d-rc25-foundling-report", "resource", "foundling report documents", RC25, CUST, ["foundling-registration"]),
    ("d-rc25-foundling-affidavit", "resource", "finder affidavit of foundling circumstances", RC25, CUST, ["foundling-registration"]),
    ("d-cust-foundling-registered", "goal", "registered foundling certificate", CUST, RC25, ["foundling-registration"]),
    # -- Registration Clerk (Window 26): late death registration --------------
    ("d-rc26-late-death-requirements", "resource", "late death registration requirements", RC26, CUST, ["late-death-registration"]),
    ("d-cust-late-death-registered", "goal", "registered late death certificate", CUST, RC26, ["late-death-registration"]),
    # -- Customer and the surrounding offices ---------------------------------
    ("d-cust-mail-delivery", "task", "deliver registry documents by mail", CUST, "post-office", ["mail-delivery"]),
    ("d-cust-courier-delivery", "task", "deliver rush documents by courier", CUST, "local-courier-personnel", ["mail-delivery"]),
    ("d-cust-out-of-town-filing", "goal", "registered out of town civil documents", CUST, "other-local-civil-registry-offices", ["out-of-town-registration"]),
    ("d-cust-security-paper-copy", "resource", "security paper certificate copy", CUST, "national-statistics-office", ["document-endorsement"]),
    ("d-cust-official-receipt", "resource", "official payment receipt", CUST, "treasury-office", ["fee-collection"]),
    ("d-cust-medical-certificate", "resource", "medical certificate of cause of death", CUST, "health-office", ["medical-certification"]),
]

PLAN_MOVES = [
    {
        "dependency": "d-roi-late-death-docs",
        "endpoint": "depender",
        "new_actor": RC26,
        "rationale": "hand the late-death paperwork reliance to the clerk already running that service",
    },
    {
        "dependency": "d-rc24-late-death-endorsement",
        "endpoint": "dependee",
        "new_actor": RC26,
        "rationale": "route late-death endorsements to the late-death clerk instead of Registration Officer I",
    },
    {
        "dependency": "d-rv-legitimation-documents",
        "endpoint": "depender",
        "new_actor": ARO,
        "rationale": "the assistant officer also handles legitimation filings and already relies on the Customer",
    },
    {
        "dependency": "d-rv-surname-documents",
        "endpoint": "depender",
        "new_actor": ARO,
        "rationale": "same relief for the surname-use filings",
    },
]


def build_document() -> ModelDocument:
    actors = tuple(
        Actor(id=aid, name=name, kind=kind, tags=frozenset(tags))
        for aid, name, kind, tags in ACTORS
    )
    deps = tuple(
        Dependency(
            id=did,
            depender=depender,
            dependee=dependee,
            dependum=Dependum(name=name, kind=kind, tags=frozenset(tags)),
        )
        for did, kind, name, depender, dependee, tags in EDGES
    )
    model = SDModel(name="City Civil Registry Office", actors=actors, dependencies=deps)
    staff = ScopeDef(name="staff", actors=tuple(sorted(STAFF_DEGREE_TARGETS)))
    return ModelDocument(model=model, scopes=(staff,))


def brute_force_profiles(edges) -> dict[str, tuple[int, int, int, int]]:
    """Raw scan over (depender, dependee) pairs; the independent counting oracle."""
    out_count: Counter[str] = Counter()
    in_count: Counter[str] = Counter()
    out_partners: dict[str, set[str]] = {}
    in_partners: dict[str, set[str]] = {}
    for depender, dependee in edges:
        out_count[depender] += 1
        in_count[dependee] += 1
        out_partners.setdefault(depender, set()).add(dependee)
        in_partners.setdefault(dependee, set()).add(depender)
    actors = set(out_count) | set(in_count)
    return {
        actor: (
            out_count[actor],
            len(out_partners.get(actor, ())),
            in_count[actor],
            len(in_partners.get(actor, ())),
        )
        for actor in actors
    }


def verify(document: ModelDocument) -> list[str]:
    problems: list[str] = []
    model = document.model

    violations = validate_model(model, document.boundaries, document.scopes)
    problems.extend(f"structural violation: {v.message}" for v in violations)

    if len(model.actors) != 16:
        problems.append(f"expected 16 actors, found {len(model.actors)}")

    pairs = [(d.depender, d.dependee) for d in model.dependencies]
    profiles = brute_force_profiles(pairs)
    for actor_id, target in STAFF_DEGREE_TARGETS.items():
        got = profiles.get(actor_id, (0, 0, 0, 0))
        if got != target:
            problems.append(f"{actor_id}: degree profile {got}, target {target}")

    total_out = sum(p[0] for p in profiles.values())
    total_in = sum(p[2] for p in profiles.values())
    if not (total_out == total_in == len(model.dependencies)):
        problems.append("edge conservation failed in brute-force count")

    # The rebalancing plan must apply cleanly and land on the post-plan targets.
    staff = sorted(STAFF_DEGREE_TARGETS)
    moves = [
        DelegationMove(m["dependency"], m["endpoint"], m["new_actor"], m.get("rationale"))
        for m in PLAN_MOVES
    ]
    plan = evaluate_plan(model, staff, moves)
    for verdict, move in zip(plan.verdicts, plan.moves):
        if not verdict.feasible:
            problems.append(f"plan move {move.dependency} judged infeasible: {verdict.reasons}")
    rebalanced = model
    for move in moves:
        from charter_deps.delegation import apply_move

        rebalanced = apply_move(rebalanced, move)
    post_profiles = brute_force_profiles([(d.depender, d.dependee) for d in rebalanced.dependencies])
    for actor_id, target in POST_PLAN_TARGETS.items():
        got = post_profiles.get(actor_id, (0, 0, 0, 0))
        if got != target:
            problems.append(f"post-plan {actor_id}: degree profile {got}, target {target}")

    # On the rebalanced model every knowledgeable reassignment of the most
    # critical actor's dependencies to the assistant officer must trip the
    # most-vulnerable guard, leaving stand-down advice as the only option.
    candidates = []
    for dep in rebalanced.dependencies:
        for endpoint in ("depender", "dependee"):
            if dep.endpoint(endpoint) != ROII:
                continue
            other = dep.dependee if endpoint == "depender" else dep.depender
            if ARO in (other,):
                continue
            if not (dep.dependum.tags & rebalanced.actor(ARO).tags):
                continue
            candidates.append(DelegationMove(dep.id, endpoint, ARO))
    if len(candidates) < 2:
        problems.append(f"expected at least two guard candidates, found {len(candidates)}")
    for move in candidates:
        verdict = check_feasibility(rebalanced, staff, move)
        if verdict.feasible or CREATES_MOST_VULNERABLE not in verdict.reason_codes:
            problems.append(f"guard did not fire for {move.dependency}/{move.endpoint}: {verdict.reasons}")

    return problems


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true", help="verify the frozen files instead of writing")
    args = parser.parse_args()

    document = build_document()
    problems = verify(document)
    if problems:
        for problem in problems:
            print(f"FAIL {problem}", file=sys.stderr)
        return 1

    istar_text = serialize_model(document)
    plan_payload = {"format_version": 1, "moves": PLAN_MOVES}
    plan_text = json.dumps(plan_payload, indent=2) + "\n"

    from charter_deps.delegation import apply_move

    rebalanced_model = document.model
    for move_spec in PLAN_MOVES:
        rebalanced_model = apply_move(
            rebalanced_model,
            DelegationMove(move_spec["dependency"], move_spec["endpoint"], move_spec["new_actor"]),
        )
    rebalanced_text = serialize_model(
        ModelDocument(model=rebalanced_model, scopes=document.scopes)
    )

    istar_path = FIXTURES / "civil-registry.istar"
    plan_path = FIXTURES / "rebalance-plan.json"
    rebalanced_path = FIXTURES / "civil-registry-rebalanced.istar"

    if args.check:
        frozen = istar_path.read_text(encoding="utf-8")
        reparsed = parse_model(frozen)
        if not reparsed.ok:
            print("FAIL frozen fixture does not parse", file=sys.stderr)
            return 1
        frozen_problems = verify(reparsed.document)
        if frozen_problems:
            for problem in frozen_problems:
                print(f"FAIL frozen: {problem}", file=sys.stderr)
            return 1
        if plan_path.read_text(encoding="utf-8") != plan_text:
            print("FAIL frozen plan file drifted", file=sys.stderr)
            return 1
        if rebalanced_path.read_text(encoding="utf-8") != rebalanced_text:
            print("FAIL frozen rebalanced fixture drifted", file=sys.stderr)
            return 1
        print("OK frozen fixture verified: 16 actors, 50 dependencies, 4-move plan")
        return 0

    FIXTURES.mkdir(exist_ok=True)
    istar_path.write_text(istar_text, encoding="utf-8")
    plan_path.write_text(plan_text, encoding="utf-8")
    rebalanced_path.write_text(rebalanced_text, encoding="utf-8")
    print(f"wrote {istar_path.relative_to(REPO)} ({len(document.model.dependencies)} dependencies)")
    print(f"wrote {plan_path.relative_to(REPO)} ({len(PLAN_MOVES)} moves)")
    print(f"wrote {rebalanced_path.relative_to(REPO)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
