export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
/** Thin fetch wrapper; the last revision observed from X-Revision is kept. */
export class ApiClient {
    constructor(baseUrl = '') {
        this.baseUrl = baseUrl;
        this.revision = 0;
    }
    async getFeatures() {
        return this.request('GET', '/api/features');
    }
    async getCandidates(feature) {
        return this.request('GET', `/api/features/${encodeURIComponent(feature)}/candidates`);
    }
    async getMap() {
        return this.request('GET', '/api/map');
    }
    async getSuggestedRelations() {
        return this.request('GET', '/api/suggested-relations');
    }
    async getJourney(background, seed) {
        const query = `background=${encodeURIComponent(background)}&seed=${seed}`;
        return this.request('GET', `/api/journey?${query}`);
    }
    async postAction(action) {
        const payload = await this.request('POST', '/api/curation', action);
        return payload.revision;
    }
    async request(method, path, body) {
        const response = await fetch(this.baseUrl + path, {
            method,
            headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        const revision = response.headers.get('X-Revision');
        if (revision !== null) {
            this.revision = parseInt(revision, 10);
        }
        if (!response.ok) {
            let message = `${response.status}`;
            try {
                const payload = (await response.json());
                if (payload.error) {
                    message = payload.error;
                }
            }
            catch {
                // non-JSON error body; keep the status text
            }
            throw new ApiError(response.status, message);
        }
        return (await response.json());
    }
}
