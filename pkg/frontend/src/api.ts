// Typed client for the session service.  One method per endpoint, errors
// rethrown as ApiError carrying the service's {error, message, field}
// envelope so views can show the reason verbatim.

import type {
  CreateResponse,
  HintsJson,
  MoveResponse,
  SessionConfig,
  SessionState,
  TreeJson,
  VertexJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly error: string,
    message: string,
    readonly field?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let res: Response;
  try {
    res = await fetch(url, init);
  } catch (exc) {
    throw new ApiError(0, "Unreachable", `cannot reach ${url}: ${exc}`);
  }
  const body = await res.json().catch(() => null);
  if (!res.ok) {
    const env = (body ?? {}) as { error?: string; message?: string; field?: string };
    throw new ApiError(
      res.status,
      env.error ?? "HttpError",
      env.message ?? `${res.status} from ${url}`,
      env.field,
    );
  }
  return body as T;
}

export class SessionApi {
  constructor(readonly base: string) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  createSession(cfg: SessionConfig): Promise<CreateResponse> {
    return request(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(cfg),
    });
  }

  getState(id: string): Promise<SessionState> {
    return request(this.url(`/sessions/${id}`));
  }

  postMove(id: string, edge: VertexJson[]): Promise<MoveResponse> {
    return request(this.url(`/sessions/${id}/moves`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ edge }),
    });
  }

  async getTree(id: string): Promise<TreeJson> {
    const out = await request<{ tree: TreeJson }>(this.url(`/sessions/${id}/tree`));
    return out.tree;
  }

  getHints(id: string): Promise<HintsJson> {
    return request(this.url(`/sessions/${id}/hints`));
  }
}
