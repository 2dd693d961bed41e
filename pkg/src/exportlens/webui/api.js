/** Typed client for the local engine, with the privacy guard built in.
 *
 * Every request the app makes flows through a guarded fetch that records the
 * URL and refuses anything that does not target the engine's own origin.
 * After the initial asset load there is no code path that can reach another
 * host; the integration tests assert the recorder stays clean.
 */
export class NetworkGuardViolation extends Error {
}
/** Wrap a transport so that every request is logged and non-engine origins throw. */
export function createGuardedFetch(engineBase, log, transport = (input, init) => fetch(input, init)) {
    const allowed = new URL(engineBase, "http://invalid.example").origin;
    return (input, init) => {
        const url = new URL(input, engineBase);
        log.push({ method: (init?.method ?? "GET").toUpperCase(), url: url.toString() });
        if (url.origin !== allowed) {
            return Promise.reject(new NetworkGuardViolation(`blocked non-engine request to ${url.toString()}`));
        }
        return transport(url.toString(), init);
    };
}
export class EngineError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
function selectionParams(sel) {
    const params = new URLSearchParams();
    for (const d of sel.datasets)
        params.append("dataset", d);
    for (const c of sel.categories)
        params.append("category", c);
    if (sel.query)
        params.set("q", sel.query);
    if (sel.timeRange) {
        params.set("from", sel.timeRange[0]);
        params.set("to", sel.timeRange[1]);
    }
    return params;
}
export class EngineApi {
    constructor(base, fetchFn) {
        this.base = base;
        this.fetchFn = fetchFn;
    }
    async request(method, path, body, contentType) {
        const init = { method, body };
        if (contentType)
            init.headers = { "content-type": contentType };
        const response = await this.fetchFn(this.base + path, init);
        if (!response.ok) {
            let detail = response.statusText;
            try {
                detail = (await response.json()).detail ?? detail;
            }
            catch {
                /* non-JSON error body */
            }
            throw new EngineError(response.status, detail);
        }
        if (response.status === 204)
            return undefined;
        return (await response.json());
    }
    categories() {
        return this.request("GET", "/api/categories");
    }
    services() {
        return this.request("GET", "/api/services");
    }
    datasets() {
        return this.request("GET", "/api/datasets");
    }
    uploadArchive(name, data, service) {
        const params = new URLSearchParams({ name });
        if (service)
            params.set("service", service);
        const body = data instanceof Uint8Array
            ? data.slice().buffer
            : data;
        return this.request("POST", `/api/datasets?${params}`, body);
    }
    deleteDataset(id) {
        return this.request("DELETE", `/api/datasets/${encodeURIComponent(id)}`);
    }
    stats(sel) {
        return this.request("GET", `/api/stats?${selectionParams(sel)}`);
    }
    treemap(sel, scale, width, height) {
        const params = selectionParams(sel);
        params.set("scale", scale);
        params.set("width", String(width));
        params.set("height", String(height));
        return this.request("GET", `/api/treemap?${params}`);
    }
    timeline(sel, split) {
        const params = selectionParams(sel);
        if (split)
            params.set("split", "true");
        return this.request("GET", `/api/timeline?${params}`);
    }
    elements(sel, offset, limit) {
        const params = selectionParams(sel);
        params.set("offset", String(offset));
        params.set("limit", String(limit));
        return this.request("GET", `/api/elements?${params}`);
    }
    element(id) {
        return this.request("GET", `/api/elements/${encodeURIComponent(id)}`);
    }
    rate(elementId, value) {
        return this.request("POST", "/api/ratings", JSON.stringify({ element_id: elementId, value }), "application/json");
    }
    average(sel) {
        return this.request("GET", `/api/ratings/average?${selectionParams(sel)}`);
    }
}
