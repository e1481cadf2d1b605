// Typed client for the flux game service. All game rules live server-side;
// this module only moves JSON.

export interface BoardLayout {
    vertex_pos?: [number, number][];
    face_pos?: [number, number][];
    outer_face?: number;
}

export interface BoardInfo {
    id: string;
    vertices: number;
    edges: [number, number][];
    faces: number[][];
    face_vertices: number[][];
    boundary_edges: number[];
    layout?: BoardLayout;
}

export interface SessionState {
    schema_version: number;
    session_id: string;
    board: string;
    mode: 'free' | 'frozen';
    faces: number[];
    target: number[];
    sector: number[];
    moves: number;
    won: boolean;
    toggleable_edges: number[];
}

export interface SolvableReport {
    schema_version: number;
    solvable: boolean;
    invariant: number[];
    solution?: number[];
}

export interface SessionOptions {
    board?: string;
    mode?: 'free' | 'frozen';
    start?: number[];
    target?: number[];
    scramble_moves?: number;
    seed?: number;
}

export class RuleViolation extends Error {
    constructor(message: string) {
        super(message);
        this.name = 'RuleViolation';
    }
}

export class GameApi {
    constructor(readonly baseUrl: string) {}

    private async getJson<T>(path: string): Promise<T> {
        const res = await fetch(this.baseUrl + path);
        if (!res.ok) throw new Error(`GET ${path} failed: ${res.status}`);
        return (await res.json()) as T;
    }

    private async postJson<T>(path: string, body: unknown): Promise<T> {
        const res = await fetch(this.baseUrl + path, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(body),
        });
        if (res.status === 409) {
            const payload = (await res.json()) as { detail?: string };
            throw new RuleViolation(payload.detail ?? 'move rejected');
        }
        if (!res.ok) throw new Error(`POST ${path} failed: ${res.status}`);
        return (await res.json()) as T;
    }

    async boards(): Promise<BoardInfo[]> {
        const data = await this.getJson<{ boards: BoardInfo[] }>('/complexes');
        return data.boards;
    }

    async createSession(options: SessionOptions): Promise<SessionState> {
        const data = await this.postJson<{ session_id: string; state: SessionState }>(
            '/session',
            options,
        );
        return data.state;
    }

    async fetchState(sessionId: string): Promise<SessionState> {
        return this.getJson<SessionState>(`/session/${sessionId}`);
    }

    async toggle(sessionId: string, edge: number): Promise<SessionState> {
        return this.postJson<SessionState>(`/session/${sessionId}/toggle`, { edge });
    }

    async reset(sessionId: string): Promise<SessionState> {
        return this.postJson<SessionState>(`/session/${sessionId}/reset`, {});
    }

    async solvable(sessionId: string): Promise<SolvableReport> {
        return this.getJson<SolvableReport>(`/session/${sessionId}/solvable`);
    }
}
