import { ApiClient, ApiError } from "./api.js";
import type { KappaRow } from "./types.js";

export interface DashboardState {
  status: "idle" | "loading" | "ready" | "error";
  /** Kappa rows exactly as the service returned them; nothing recomputed. */
  rows: KappaRow[];
  error: string | null;
}

export class AgreementDashboard {
  private state: DashboardState = { status: "idle", rows: [], error: null };
  private listeners: ((state: DashboardState) => void)[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): DashboardState {
    return { ...this.state, rows: [...this.state.rows] };
  }

  onChange(listener: (state: DashboardState) => void): void {
    this.listeners.push(listener);
  }

  private update(patch: Partial<DashboardState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.getState());
  }

  /** Always hits the service; the dashboard keeps no stale cache. */
  async refresh(): Promise<void> {
    this.update({ status: "loading", error: null });
    try {
      const rows = await this.api.agreement();
      this.update({ status: "ready", rows });
    } catch (err) {
      const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
      this.update({ status: "error", error: message, rows: [] });
    }
  }
}
