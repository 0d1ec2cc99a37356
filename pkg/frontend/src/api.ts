/** Thin typed client for the analysis service; the JSON schemas are the
 * whole contract between this UI and the engine. */

import type { AnalysisRequest, ClassEntry, MethodEntry, ReportDocument } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    /** Engine error name, surfaced verbatim (e.g. "UnresolvableTemplate"). */
    readonly errorName: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    if (!response.ok) {
      let name = `HTTP ${response.status}`;
      let message = text;
      try {
        const body = JSON.parse(text) as { error?: string; message?: string };
        name = body.error ?? name;
        message = body.message ?? message;
      } catch {
        // non-JSON error body; keep the raw text
      }
      throw new ApiError(response.status, name, message);
    }
    return JSON.parse(text) as T;
  }

  classes(): Promise<ClassEntry[]> {
    return this.request<ClassEntry[]>("/api/classes");
  }

  methods(className: string): Promise<MethodEntry[]> {
    return this.request<MethodEntry[]>(`/api/classes/${encodeURIComponent(className)}/methods`);
  }

  superclasses(className: string): Promise<string[]> {
    return this.request<string[]>(`/api/classes/${encodeURIComponent(className)}/superclasses`);
  }

  analyze(request: AnalysisRequest): Promise<ReportDocument> {
    return this.request<ReportDocument>("/api/analyze", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  async source(file: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/source?file=${encodeURIComponent(file)}`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, `HTTP ${response.status}`, await response.text());
    }
    return response.text();
  }
}
