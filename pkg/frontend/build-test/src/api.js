/** Thin typed client for the analysis service; the JSON schemas are the
 * whole contract between this UI and the engine. */
export class ApiError extends Error {
    status;
    errorName;
    constructor(status, 
    /** Engine error name, surfaced verbatim (e.g. "UnresolvableTemplate"). */
    errorName, message) {
        super(message);
        this.status = status;
        this.errorName = errorName;
    }
}
export class ApiClient {
    baseUrl;
    fetchFn;
    constructor(baseUrl, fetchFn = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async request(path, init) {
        const response = await this.fetchFn(this.baseUrl + path, init);
        const text = await response.text();
        if (!response.ok) {
            let name = `HTTP ${response.status}`;
            let message = text;
            try {
                const body = JSON.parse(text);
                name = body.error ?? name;
                message = body.message ?? message;
            }
            catch {
                // non-JSON error body; keep the raw text
            }
            throw new ApiError(response.status, name, message);
        }
        return JSON.parse(text);
    }
    classes() {
        return this.request("/api/classes");
    }
    methods(className) {
        return this.request(`/api/classes/${encodeURIComponent(className)}/methods`);
    }
    superclasses(className) {
        return this.request(`/api/classes/${encodeURIComponent(className)}/superclasses`);
    }
    analyze(request) {
        return this.request("/api/analyze", {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(request),
        });
    }
    async source(file) {
        const response = await this.fetchFn(`${this.baseUrl}/api/source?file=${encodeURIComponent(file)}`);
        if (!response.ok) {
            throw new ApiError(response.status, `HTTP ${response.status}`, await response.text());
        }
        return response.text();
    }
}
