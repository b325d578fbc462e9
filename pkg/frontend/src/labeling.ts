import { ApiClient, ApiError } from "./api.js";
import type { Task } from "./types.js";

export type LabelFlowStatus = "idle" | "loading" | "ready" | "submitting" | "empty" | "error";

export interface LabelFlowState {
  status: LabelFlowStatus;
  task: Task | null;
  degree: number | null;
  nearParaphrase: boolean;
  /** Verbatim service/network error to show in the banner. */
  error: string | null;
  /** When true the error is recoverable via retry() without losing the selection. */
  canRetry: boolean;
}

/** Codes meaning "this task is no longer claimable here": re-fetch the queue. */
const STALE_CLAIM_CODES = new Set(["task_already_done", "no_task", "pair_finalized"]);

/**
 * The annotator's labeling loop: fetch a task, collect a degree (0-5) and
 * an optional near-paraphrase flag, submit, advance. All decisions stay on
 * the server; this controller only carries the selection.
 *
 * Invariants enforced here: submit is possible only with a degree
 * selected; the near-paraphrase flag can only be set while the selected
 * degree maps to non-paraphrase (3 or lower); a failed submit keeps the
 * in-progress selection so retry loses nothing; a stale-claim rejection
 * abandons the task and re-fetches the queue.
 */
export class LabelFlow {
  private state: LabelFlowState = {
    status: "idle",
    task: null,
    degree: null,
    nearParaphrase: false,
    error: null,
    canRetry: false,
  };
  private listeners: ((state: LabelFlowState) => void)[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly annotatorId: string,
  ) {}

  getState(): LabelFlowState {
    return { ...this.state };
  }

  onChange(listener: (state: LabelFlowState) => void): void {
    this.listeners.push(listener);
  }

  private update(patch: Partial<LabelFlowState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.getState());
  }

  get submitEnabled(): boolean {
    return this.state.status === "ready" && this.state.degree !== null;
  }

  get nearToggleEnabled(): boolean {
    return this.state.status === "ready" && this.state.degree !== null && this.state.degree <= 3;
  }

  async loadNext(): Promise<void> {
    this.update({ status: "loading", error: null, canRetry: false });
    try {
      const task = await this.api.nextTask(this.annotatorId);
      if (task === null) {
        this.update({ status: "empty", task: null, degree: null, nearParaphrase: false });
      } else {
        this.update({ status: "ready", task, degree: null, nearParaphrase: false });
      }
    } catch (err) {
      this.update({ status: "error", error: describe(err), canRetry: true });
    }
  }

  selectDegree(degree: number): void {
    if (this.state.status !== "ready" || !Number.isInteger(degree) || degree < 0 || degree > 5) {
      return;
    }
    // Flag is only meaningful for non-paraphrase degrees; picking 4/5 clears it.
    const nearParaphrase = degree <= 3 ? this.state.nearParaphrase : false;
    this.update({ degree, nearParaphrase });
  }

  toggleNearParaphrase(): void {
    if (!this.nearToggleEnabled) return;
    this.update({ nearParaphrase: !this.state.nearParaphrase });
  }

  async submit(): Promise<void> {
    const { task, degree, nearParaphrase } = this.state;
    if (!this.submitEnabled || task === null || degree === null) return;
    this.update({ status: "submitting", error: null });
    try {
      await this.api.submitLabel({
        pair_id: task.pair_id,
        annotator_id: this.annotatorId,
        sts_degree: degree,
        near_paraphrase: nearParaphrase,
      });
      await this.loadNext();
    } catch (err) {
      if (err instanceof ApiError && STALE_CLAIM_CODES.has(err.code)) {
        // Someone else finalized this task: drop it and re-fetch.
        await this.loadNext();
        return;
      }
      // Keep the selection; the annotator can retry without re-entering it.
      this.update({ status: "ready", error: describe(err), canRetry: true });
    }
  }

  async retry(): Promise<void> {
    if (this.state.status === "error") {
      await this.loadNext();
    } else if (this.state.error !== null) {
      await this.submit();
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}
