import type { FetchLike } from "./api.js";

export interface RecordedCall {
  method: string;
  path: string;
  url: string;
  body: unknown;
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/**
 * Scriptable fetch double. Responses for a (method, path) key are consumed
 * in order; the last one keeps repeating. A responder may also be an Error
 * to simulate a network failure (the fetch promise rejects).
 */
export class FetchStub {
  calls: RecordedCall[] = [];
  private routes = new Map<string, (Response | (() => Response) | Error)[]>();

  on(method: string, path: string, ...responses: (Response | (() => Response) | Error)[]): this {
    const key = `${method} ${path}`;
    this.routes.set(key, [...(this.routes.get(key) ?? []), ...responses]);
    return this;
  }

  requests(method: string, path: string): RecordedCall[] {
    return this.calls.filter((c) => c.method === method && c.path === path);
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.split("?")[0] ?? url;
    this.calls.push({
      method,
      path,
      url,
      body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    });
    const queue = this.routes.get(`${method} ${path}`);
    if (!queue || queue.length === 0) {
      throw new Error(`FetchStub: no route for ${method} ${path}`);
    }
    const next = queue.length > 1 ? queue.shift()! : queue[0]!;
    if (next instanceof Error) throw next;
    const response = typeof next === "function" ? next() : next;
    // Response bodies are single-use; clone so a repeated route stays readable.
    return response.clone();
  };
}
