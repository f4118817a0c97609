// Typed client for the mutation session backend.  The browser never
// computes any algebra: every label shown comes from these responses.

export type MonomialJson = number[][];

export interface QuiverJson {
  vertices: string[];
  frozen: string[];
  arrows: [string, string, number][];
}

export interface SeedJson {
  kind: "band" | "grid";
  quiver: QuiverJson;
  labels: Record<string, MonomialJson>;
  steps: number;
}

export interface RecordJson {
  vertex: string;
  old: MonomialJson;
  p_in: MonomialJson;
  p_out: MonomialJson;
  chosen: string;
  new: MonomialJson;
}

export interface LoadBody {
  xi?: number[];
  n?: number;
  ell?: number;
  r?: number;
}

export class BackendError extends Error {
  constructor(public status: number, public detail: unknown) {
    super(`backend error ${status}: ${JSON.stringify(detail)}`);
  }
}

async function expectJson<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) {
    throw new BackendError(resp.status, (body as { detail?: unknown }).detail ?? body);
  }
  return body as T;
}

export class ExplorerClient {
  constructor(private base: string) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  async load(body: LoadBody): Promise<SeedJson> {
    const resp = await fetch(this.url("/load"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return expectJson<SeedJson>(resp);
  }

  async seed(): Promise<SeedJson> {
    return expectJson<SeedJson>(await fetch(this.url("/seed")));
  }

  async mutate(vertex: string): Promise<SeedJson> {
    const resp = await fetch(this.url("/mutate"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ vertex }),
    });
    return expectJson<SeedJson>(resp);
  }

  async undo(): Promise<SeedJson> {
    return expectJson<SeedJson>(await fetch(this.url("/undo"), { method: "POST" }));
  }

  async log(): Promise<RecordJson[]> {
    return expectJson<RecordJson[]>(await fetch(this.url("/log")));
  }
}
