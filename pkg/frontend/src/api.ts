import type {
  Adjudication,
  AdjudicationSubmission,
  Disagreement,
  Guideline,
  KappaRow,
  LabelSubmission,
  SubmittedRecord,
  Task,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Structured error body from the service ({code, message}). */
export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  try {
    const body = (await resp.json()) as { code?: string; message?: string };
    return new ApiError(body.code ?? "unknown", body.message ?? resp.statusText, resp.status);
  } catch {
    return new ApiError("unknown", resp.statusText, resp.status);
  }
}

/**
 * Thin typed client over the service API. Does no interpretation of the
 * payloads: labels, kappa values and mapped judgments come back exactly
 * as the service computed them.
 */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  async nextTask(annotatorId: string): Promise<Task | null> {
    const data = await this.get<{ task: Task | null }>(
      `/api/tasks/next?annotator=${encodeURIComponent(annotatorId)}`,
    );
    return data.task;
  }

  async submitLabel(submission: LabelSubmission): Promise<SubmittedRecord> {
    const data = await this.post<{ record: SubmittedRecord }>("/api/labels", submission);
    return data.record;
  }

  async disagreements(): Promise<Disagreement[]> {
    const data = await this.get<{ disagreements: Disagreement[] }>("/api/disagreements");
    return data.disagreements;
  }

  async adjudicate(submission: AdjudicationSubmission): Promise<Adjudication> {
    const data = await this.post<{ adjudication: Adjudication }>("/api/adjudications", submission);
    return data.adjudication;
  }

  async agreement(): Promise<KappaRow[]> {
    const data = await this.get<{ reports: KappaRow[] }>("/api/stats/agreement");
    return data.reports;
  }

  async guideline(): Promise<Guideline> {
    return this.get<Guideline>("/api/guideline");
  }
}
