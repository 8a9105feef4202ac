// Wire shapes of the analysis service (format_version 1 documents).

export interface ActorDoc {
  id: string;
  name: string;
  kind: string;
  tags: string[];
}

export interface DependumDoc {
  name: string;
  kind: string;
  tags: string[];
}

export interface DependencyDoc {
  id: string;
  depender: string;
  dependee: string;
  dependum: DependumDoc;
}

export interface ScopeDoc {
  name: string;
  actors: string[];
}

export interface ModelDoc {
  format_version: number;
  name: string;
  actors: ActorDoc[];
  dependencies: DependencyDoc[];
  sr: unknown[];
  scopes: ScopeDoc[];
}

export interface MetricsRowDoc {
  actor: string;
  out_deps: number;
  dependees: number;
  vm: string;
  vm_exact: string;
  in_deps: number;
  dependers: number;
  cm: number;
}

export interface HotspotsDoc {
  most_vulnerable: string[];
  most_critical: string[];
}

export interface AnalysisDoc {
  scope: string[];
  rows: MetricsRowDoc[];
  hotspots: HotspotsDoc;
}

export interface MoveDoc {
  dependency: string;
  endpoint: "depender" | "dependee";
  new_actor: string;
  rationale?: string;
}

export interface VerdictReasonDoc {
  code: string;
  message: string;
}

export interface SnapshotDoc {
  vm: string;
  vm_exact: string;
  cm: number;
}

export interface VerdictDoc {
  feasible: boolean;
  reasons: VerdictReasonDoc[];
  receiver_before: SnapshotDoc | null;
  receiver_after: SnapshotDoc | null;
}

export interface ChangeDoc {
  dependency: string;
  endpoint: "depender" | "dependee";
  old_actor: string;
  new_actor: string;
}

export interface AdvisoryDoc {
  actor: string;
  reason: string;
}

export interface PlanDoc {
  moves: MoveDoc[];
  verdicts: VerdictDoc[];
  advisories: AdvisoryDoc[];
  table_before: MetricsRowDoc[];
  table_after: MetricsRowDoc[];
  changes: ChangeDoc[];
}

export interface ValidateDoc {
  model: ModelDoc;
  violations: { code: string; message: string; subject: string }[];
}

export interface SpanDoc {
  line: number;
  column: number;
  length: number;
}

export interface ParseErrorDoc {
  code: string;
  message: string;
  span?: SpanDoc;
  path?: string;
}

export interface ApiErrorDoc {
  code: string;
  message: string;
  details: unknown;
}

export interface PlanFileDoc {
  format_version: number;
  moves: MoveDoc[];
}
