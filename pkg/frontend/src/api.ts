import type { ApiErrorBody, CheckReport, PlayerName, SessionState, SideName } from "./types.js";

export class ApiError extends Error {
    constructor(
        public code: string,
        message: string,
        public status: number,
    ) {
        super(message);
    }
}

type FetchLike = typeof fetch;

/** Thin JSON client for the game server; holds no game logic. */
export class ApiClient {
    constructor(
        private baseUrl: string = "",
        private fetchImpl: FetchLike = fetch,
    ) {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const resp = await this.fetchImpl(this.baseUrl + path, {
            method,
            headers: body === undefined ? {} : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (resp.status === 204) {
            return undefined as T;
        }
        let parsed: unknown;
        try {
            parsed = await resp.json();
        } catch {
            throw new ApiError("bad_response", `non-JSON response (${resp.status})`, resp.status);
        }
        if (!resp.ok) {
            const err = parsed as ApiErrorBody;
            throw new ApiError(err.code ?? "bad_response", err.message ?? "request failed", resp.status);
        }
        return parsed as T;
    }

    check(structureA: string, structureB: string, rounds: number): Promise<CheckReport> {
        return this.request("POST", "/api/check", {
            structure_a: structureA,
            structure_b: structureB,
            rounds,
        });
    }

    createSession(
        structureA: string,
        structureB: string,
        rounds: number,
        humanRole: PlayerName,
    ): Promise<SessionState> {
        return this.request("POST", "/api/sessions", {
            structure_a: structureA,
            structure_b: structureB,
            rounds,
            human_role: humanRole,
        });
    }

    getSession(id: string): Promise<SessionState> {
        return this.request("GET", `/api/sessions/${id}`);
    }

    /** `turn` is the move-log length the client saw; stale submissions are rejected. */
    submitMove(id: string, side: SideName, element: number, turn: number): Promise<SessionState> {
        return this.request("POST", `/api/sessions/${id}/moves`, { side, element, turn });
    }

    deleteSession(id: string): Promise<void> {
        return this.request("DELETE", `/api/sessions/${id}`);
    }
}
