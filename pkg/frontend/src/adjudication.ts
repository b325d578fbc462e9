import { ApiClient, ApiError } from "./api.js";
import type { Disagreement, Label } from "./types.js";

export interface AdjudicationState {
  status: "idle" | "loading" | "ready" | "submitting" | "error";
  /** Conflicting pairs exactly as listed by the service. */
  items: Disagreement[];
  error: string | null;
}

/**
 * Adjudicator's view: the service's disagreement list (each entry carries
 * both annotators' degrees and their server-mapped labels), a final-label
 * choice per pair, refresh after every resolution. Service rejections are
 * surfaced verbatim.
 */
export class AdjudicationFlow {
  private state: AdjudicationState = { status: "idle", items: [], error: null };
  private listeners: ((state: AdjudicationState) => void)[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly adjudicatorId: string,
  ) {}

  getState(): AdjudicationState {
    return { ...this.state, items: [...this.state.items] };
  }

  onChange(listener: (state: AdjudicationState) => void): void {
    this.listeners.push(listener);
  }

  private update(patch: Partial<AdjudicationState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.getState());
  }

  async refresh(): Promise<void> {
    this.update({ status: "loading", error: null });
    try {
      const items = await this.api.disagreements();
      this.update({ status: "ready", items });
    } catch (err) {
      this.update({ status: "error", error: describe(err) });
    }
  }

  async resolve(pairId: string, finalLabel: Label, nearParaphrase = false): Promise<void> {
    this.update({ status: "submitting", error: null });
    try {
      await this.api.adjudicate({
        pair_id: pairId,
        adjudicator_id: this.adjudicatorId,
        final_label: finalLabel,
        near_paraphrase: nearParaphrase,
      });
      await this.refresh();
    } catch (err) {
      this.update({ status: "ready", error: describe(err) });
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}
