// Canvas renderer. Face tiles are drawn truchet-style: arcs pair the
// midpoints of consecutive face sides; state 1 is the same pattern rotated
// by one side (an arbitrary constant; the engine only exposes bits).

import type { BoardView, FaceGlyph, Point } from './board.js';

export interface RenderOptions {
    width: number;
    height: number;
    margin: number;
    shakeEdge?: number | null;
}

export interface Transform {
    sx: (x: number) => number;
    sy: (y: number) => number;
}

export function fitTransform(view: BoardView, opts: RenderOptions): Transform {
    let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
    for (const e of view.edges) {
        for (const p of [e.a, e.b]) {
            minX = Math.min(minX, p.x); maxX = Math.max(maxX, p.x);
            minY = Math.min(minY, p.y); maxY = Math.max(maxY, p.y);
        }
    }
    for (const g of view.glyphs) {
        minX = Math.min(minX, g.center.x); maxX = Math.max(maxX, g.center.x);
        minY = Math.min(minY, g.center.y); maxY = Math.max(maxY, g.center.y);
    }
    const spanX = Math.max(maxX - minX, 1e-6);
    const spanY = Math.max(maxY - minY, 1e-6);
    const scale = Math.min(
        (opts.width - 2 * opts.margin) / spanX,
        (opts.height - 2 * opts.margin) / spanY,
    );
    return {
        sx: x => opts.margin + (x - minX) * scale,
        sy: y => opts.height - opts.margin - (y - minY) * scale,
    };
}

function sideMidpoints(polygon: Point[]): Point[] {
    const out: Point[] = [];
    for (let i = 0; i < polygon.length; i++) {
        const a = polygon[i];
        const b = polygon[(i + 1) % polygon.length];
        out.push({ x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 });
    }
    return out;
}

function drawTile(ctx: CanvasRenderingContext2D, glyph: FaceGlyph, t: Transform, ghost: boolean): void {
    const polygon = glyph.polygon;
    const state = ghost ? glyph.targetState : glyph.state;
    ctx.save();
    ctx.strokeStyle = ghost ? 'rgba(120,120,120,0.45)' : state ? '#b4231f' : '#1f5fb4';
    ctx.lineWidth = ghost ? 1.5 : 3;
    if (ghost) ctx.setLineDash([4, 4]);
    if (polygon.length >= 3) {
        const mids = sideMidpoints(polygon).map(p => ({ x: t.sx(p.x), y: t.sy(p.y) }));
        const center = { x: t.sx(glyph.center.x), y: t.sy(glyph.center.y) };
        const n = mids.length;
        const offset = state ? 1 : 0;
        for (let i = offset; i + 1 < n + offset; i += 2) {
            const a = mids[i % n];
            const b = mids[(i + 1) % n];
            ctx.beginPath();
            ctx.moveTo(a.x, a.y);
            ctx.quadraticCurveTo(center.x, center.y, b.x, b.y);
            ctx.stroke();
        }
        if (n % 2 === 1) {
            const leftover = mids[(offset + n - 1) % n];
            ctx.beginPath();
            ctx.moveTo(leftover.x, leftover.y);
            ctx.lineTo(center.x, center.y);
            ctx.stroke();
        }
    } else {
        // degenerate face (off-board glyph): a filled marker carries the bit
        const c = { x: t.sx(glyph.center.x), y: t.sy(glyph.center.y) };
        ctx.beginPath();
        ctx.arc(c.x, c.y, 8, 0, 2 * Math.PI);
        ctx.stroke();
    }
    ctx.restore();
}

export function renderBoard(
    ctx: CanvasRenderingContext2D,
    view: BoardView,
    opts: RenderOptions,
): void {
    const t = fitTransform(view, opts);
    ctx.clearRect(0, 0, opts.width, opts.height);

    for (const e of view.edges) {
        ctx.save();
        if (e.edge === opts.shakeEdge) {
            ctx.strokeStyle = '#d00';
            ctx.lineWidth = 4;
        } else {
            ctx.strokeStyle = e.toggleable ? '#333' : '#bbb';
            ctx.lineWidth = e.toggleable ? 2 : 1;
            if (!e.toggleable) ctx.setLineDash([2, 3]);
        }
        ctx.beginPath();
        ctx.moveTo(t.sx(e.a.x), t.sy(e.a.y));
        ctx.lineTo(t.sx(e.b.x), t.sy(e.b.y));
        ctx.stroke();
        ctx.restore();
        ctx.save();
        ctx.fillStyle = e.toggleable ? '#333' : '#bbb';
        ctx.beginPath();
        ctx.arc(t.sx(e.midpoint.x), t.sy(e.midpoint.y), 4, 0, 2 * Math.PI);
        ctx.fill();
        ctx.restore();
    }

    for (const glyph of view.glyphs) {
        if (glyph.mismatch) drawTile(ctx, glyph, t, true);
        drawTile(ctx, glyph, t, false);
    }

    ctx.save();
    ctx.fillStyle = '#000';
    ctx.font = '14px sans-serif';
    ctx.fillText(`${view.sectorBadge}   moves: ${view.moveCounter}`, 10, 18);
    if (view.won) {
        ctx.fillStyle = '#0a7d28';
        ctx.font = 'bold 22px sans-serif';
        ctx.fillText('solved!', 10, 44);
    }
    ctx.restore();
}
