// Thin typed client for the /v1 analysis service.  Stateless on both ends:
// every call carries the full model.

import type { AnalysisDoc, ApiErrorDoc, ModelDoc, MoveDoc, ParseErrorDoc, PlanDoc, ValidateDoc } from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: unknown;

  constructor(status: number, body: ApiErrorDoc) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.details = body.details;
  }

  parseErrors(): ParseErrorDoc[] {
    if (this.code === "PARSE_ERROR" && Array.isArray(this.details)) {
      return this.details as ParseErrorDoc[];
    }
    return [];
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let body: ApiErrorDoc;
  try {
    body = (await response.json()) as ApiErrorDoc;
  } catch {
    body = { code: "BAD_REQUEST", message: `service error ${response.status}`, details: null };
  }
  throw new ApiError(response.status, body);
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async post<T>(path: string, body: string, contentType: string): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      method: "POST",
      headers: { "Content-Type": contentType },
      body,
    });
    await raiseForStatus(response);
    return (await response.json()) as T;
  }

  /** Parse DSL text (or revalidate a structured model) into canonical form. */
  validateText(text: string): Promise<ValidateDoc> {
    return this.post<ValidateDoc>("/v1/validate", text, "text/plain; charset=utf-8");
  }

  validateModel(model: ModelDoc): Promise<ValidateDoc> {
    return this.post<ValidateDoc>("/v1/validate", JSON.stringify(model), "application/json");
  }

  analyze(model: ModelDoc, scope: string | string[]): Promise<AnalysisDoc> {
    return this.post<AnalysisDoc>(
      "/v1/analyze",
      JSON.stringify({ model, scope }),
      "application/json",
    );
  }

  /**
   * Judge a move list against the model.  The workbench always evaluates with
   * skip_infeasible=false so that an explicitly overridden infeasible move is
   * still applied on replay; acceptance of infeasible moves is gated in the UI.
   */
  whatif(model: ModelDoc, scope: string | string[], moves: MoveDoc[]): Promise<PlanDoc> {
    return this.post<PlanDoc>(
      "/v1/whatif",
      JSON.stringify({ model, scope, moves, policy: { skip_infeasible: false } }),
      "application/json",
    );
  }

  recommend(model: ModelDoc, scope: string | string[], maxMoves = 10): Promise<PlanDoc> {
    return this.post<PlanDoc>(
      "/v1/recommend",
      JSON.stringify({ model, scope, config: { max_moves: maxMoves } }),
      "application/json",
    );
  }
}
