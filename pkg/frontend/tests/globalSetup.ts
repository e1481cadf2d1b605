// Spawn the game service for the test run; the UI has no rules of its own,
// so the tests are meaningless without the real backend.

import { spawn, type ChildProcess } from 'node:child_process';

export const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let child: ChildProcess | null = null;

async function waitForReady(timeoutMs: number): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        try {
            const res = await fetch(`${BASE}/complexes`);
            if (res.ok) return;
        } catch {
            // not up yet
        }
        await new Promise(r => setTimeout(r, 300));
    }
    throw new Error('game service did not come up');
}

export async function setup(): Promise<void> {
    child = spawn('bistable', ['game', 'serve', '--port', String(PORT)], {
        stdio: 'ignore',
    });
    child.on('error', err => {
        throw new Error(`failed to launch service: ${err}`);
    });
    await waitForReady(30000);
}

export async function teardown(): Promise<void> {
    if (child && !child.killed) child.kill();
}
