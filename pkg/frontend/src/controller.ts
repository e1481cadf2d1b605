// Session controller: owns the latest server state, serializes mutations
// (at most one in-flight toggle), and notifies listeners after every
// response. Rejected or failed moves leave the view untouched.

import { GameApi, RuleViolation } from './api.js';
import type { BoardInfo, SessionState, SessionOptions, SolvableReport } from './api.js';
import { buildView } from './board.js';
import type { BoardView } from './board.js';

export interface ClickResult {
    accepted: boolean;
    ruleText?: string;   // set on frozen-boundary rejections: drive the shake
    networkError?: boolean;
}

export type ViewListener = (view: BoardView) => void;

export class GameController {
    private state: SessionState | null = null;
    private board: BoardInfo | null = null;
    private listeners: ViewListener[] = [];
    private inFlight: Promise<unknown> = Promise.resolve();

    constructor(readonly api: GameApi) {}

    onChange(listener: ViewListener): void {
        this.listeners.push(listener);
    }

    get view(): BoardView {
        if (!this.state || !this.board) throw new Error('no session started');
        return buildView(this.board, this.state);
    }

    private apply(state: SessionState): void {
        this.state = state;
        const view = this.view;
        for (const listener of this.listeners) listener(view);
    }

    async start(options: SessionOptions): Promise<BoardView> {
        const boards = await this.api.boards();
        const state = await this.api.createSession(options);
        const board = boards.find(b => b.id === state.board) ?? null;
        if (!board) throw new Error(`board ${state.board} missing from catalog`);
        this.board = board;
        this.apply(state);
        return this.view;
    }

    /** POST the toggle and re-render from the response; never mutate locally. */
    async handleClick(edge: number): Promise<ClickResult> {
        if (!this.state) throw new Error('no session started');
        const sessionId = this.state.session_id;
        const attempt = this.inFlight.then(async (): Promise<ClickResult> => {
            try {
                const next = await this.api.toggle(sessionId, edge);
                this.apply(next);
                return { accepted: true };
            } catch (err) {
                if (err instanceof RuleViolation) {
                    return { accepted: false, ruleText: err.message };
                }
                return { accepted: false, networkError: true };
            }
        });
        this.inFlight = attempt;
        return attempt;
    }

    async refresh(): Promise<BoardView> {
        if (!this.state) throw new Error('no session started');
        this.apply(await this.api.fetchState(this.state.session_id));
        return this.view;
    }

    async reset(): Promise<BoardView> {
        if (!this.state) throw new Error('no session started');
        this.apply(await this.api.reset(this.state.session_id));
        return this.view;
    }

    async solvable(): Promise<SolvableReport> {
        if (!this.state) throw new Error('no session started');
        return this.api.solvable(this.state.session_id);
    }

    /** Step through the server's solution; resolves with the final view. */
    async replaySolution(onStep?: ViewListener, delayMs = 0): Promise<BoardView> {
        const report = await this.solvable();
        if (!report.solvable || !report.solution) {
            throw new Error(
                `unsolvable: separating invariant ${report.invariant.join('')}`,
            );
        }
        for (const edge of report.solution) {
            const result = await this.handleClick(edge);
            if (!result.accepted) throw new Error('replay move rejected');
            if (onStep) onStep(this.view);
            if (delayMs > 0) await new Promise(r => setTimeout(r, delayMs));
        }
        return this.view;
    }
}
