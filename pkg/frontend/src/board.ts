// View-model: everything the renderer needs, derived from the last server
// state and the catalog layout. No game rules here; face glyphs mirror the
// server bits verbatim, and the sector badge is the server's own invariant.

import type { BoardInfo, SessionState } from './api.js';

export interface Point {
    x: number;
    y: number;
}

export interface FaceGlyph {
    face: number;
    state: number;        // 0 or 1, straight from the server
    targetState: number;  // ghost overlay
    mismatch: boolean;
    center: Point;
    polygon: Point[];     // vertex positions of the face walk (may be empty)
}

export interface EdgeTarget {
    edge: number;
    a: Point;
    b: Point;
    midpoint: Point;
    toggleable: boolean;
}

export interface BoardView {
    sessionId: string;
    boardId: string;
    mode: 'free' | 'frozen';
    glyphs: FaceGlyph[];
    edges: EdgeTarget[];
    sectorBadge: string;
    moveCounter: number;
    won: boolean;
}

// Deterministic fallback when the catalog carries no layout: vertices on a
// circle. Crude, but every board stays clickable.
export function fallbackVertexPositions(count: number): [number, number][] {
    const out: [number, number][] = [];
    for (let i = 0; i < count; i++) {
        const angle = (2 * Math.PI * i) / count - Math.PI / 2;
        out.push([Math.cos(angle), Math.sin(angle)]);
    }
    return out;
}

function centroid(points: Point[]): Point {
    const n = Math.max(points.length, 1);
    let x = 0;
    let y = 0;
    for (const p of points) {
        x += p.x;
        y += p.y;
    }
    return { x: x / n, y: y / n };
}

export function buildView(board: BoardInfo, state: SessionState): BoardView {
    const vpos = board.layout?.vertex_pos ?? fallbackVertexPositions(board.vertices);
    const vertexPoint = (v: number): Point => ({ x: vpos[v][0], y: vpos[v][1] });

    const toggleable = new Set(state.toggleable_edges);
    const edges: EdgeTarget[] = board.edges.map(([u, v], edge) => {
        const a = vertexPoint(u);
        const b = vertexPoint(v);
        return {
            edge,
            a,
            b,
            midpoint: { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 },
            toggleable: toggleable.has(edge),
        };
    });

    const facePos = board.layout?.face_pos;
    const glyphs: FaceGlyph[] = state.faces.map((bit, face) => {
        const polygon = (board.face_vertices[face] ?? []).map(vertexPoint);
        const center = facePos ? { x: facePos[face][0], y: facePos[face][1] } : centroid(polygon);
        return {
            face,
            state: bit,
            targetState: state.target[face],
            mismatch: bit !== state.target[face],
            center,
            polygon,
        };
    });

    return {
        sessionId: state.session_id,
        boardId: state.board,
        mode: state.mode,
        glyphs,
        edges,
        sectorBadge: `sector ${state.sector.join('')}`,
        moveCounter: state.moves,
        won: state.won,
    };
}

export function nearestEdge(view: BoardView, x: number, y: number): EdgeTarget | null {
    let best: EdgeTarget | null = null;
    let bestDist = Infinity;
    for (const target of view.edges) {
        const dx = target.midpoint.x - x;
        const dy = target.midpoint.y - y;
        const d = dx * dx + dy * dy;
        if (d < bestDist) {
            bestDist = d;
            best = target;
        }
    }
    return best;
}
