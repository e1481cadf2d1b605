// Browser bootstrap: board picker, canvas click handling, replay button.

import { GameApi } from './api.js';
import { GameController } from './controller.js';
import { fitTransform, renderBoard } from './render.js';
import type { RenderOptions } from './render.js';

const WIDTH = 720;
const HEIGHT = 640;

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
}

async function boot(): Promise<void> {
    const canvas = el<HTMLCanvasElement>('board');
    canvas.width = WIDTH;
    canvas.height = HEIGHT;
    const ctx = canvas.getContext('2d');
    if (!ctx) throw new Error('canvas unsupported');
    const status = el<HTMLDivElement>('status');
    const boardSelect = el<HTMLSelectElement>('board-select');
    const modeSelect = el<HTMLSelectElement>('mode-select');
    const newGame = el<HTMLButtonElement>('new-game');
    const replay = el<HTMLButtonElement>('replay');

    const api = new GameApi('');
    const controller = new GameController(api);
    const opts: RenderOptions = { width: WIDTH, height: HEIGHT, margin: 46, shakeEdge: null };

    for (const board of await api.boards()) {
        const option = document.createElement('option');
        option.value = board.id;
        option.textContent = board.id;
        if (board.id === 'icosahedron') option.selected = true;
        boardSelect.appendChild(option);
    }

    controller.onChange(view => renderBoard(ctx, view, opts));

    async function startGame(): Promise<void> {
        status.textContent = 'starting…';
        await controller.start({
            board: boardSelect.value,
            mode: modeSelect.value as 'free' | 'frozen',
            scramble_moves: 9,
            seed: Math.floor(Math.random() * 1e6),
        });
        const report = await controller.solvable();
        status.textContent = report.solvable
            ? 'reach the ghost tiles'
            : `different sector: invariant ${report.invariant.join('')}, unwinnable`;
        replay.disabled = !report.solvable;
    }

    newGame.addEventListener('click', () => void startGame());
    replay.addEventListener('click', () => {
        replay.disabled = true;
        void controller
            .replaySolution(undefined, 220)
            .then(() => (status.textContent = 'replayed to a win'))
            .catch(err => (status.textContent = String(err)))
            .finally(() => (replay.disabled = false));
    });

    canvas.addEventListener('click', event => {
        const rect = canvas.getBoundingClientRect();
        const view = controller.view;
        const t = fitTransform(view, opts);
        const x = event.clientX - rect.left;
        const y = event.clientY - rect.top;
        let best: number | null = null;
        let bestDist = Infinity;
        for (const e of view.edges) {
            const d = (t.sx(e.midpoint.x) - x) ** 2 + (t.sy(e.midpoint.y) - y) ** 2;
            if (d < bestDist) {
                bestDist = d;
                best = e.edge;
            }
        }
        if (best === null) return;
        const edge = best;
        void controller.handleClick(edge).then(result => {
            if (!result.accepted && result.ruleText) {
                opts.shakeEdge = edge;
                status.textContent = result.ruleText;
                renderBoard(ctx, controller.view, opts);
                setTimeout(() => {
                    opts.shakeEdge = null;
                    renderBoard(ctx, controller.view, opts);
                }, 450);
            } else if (!result.accepted) {
                status.textContent = 'network hiccup: board unchanged, try again';
            } else if (controller.view.won) {
                status.textContent = 'solved!';
            }
        });
    });

    await startGame();
}

if (typeof document !== 'undefined') {
    window.addEventListener('load', () => void boot());
}
