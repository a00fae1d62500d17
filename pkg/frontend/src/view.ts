import type { PendingMove, SessionState, SideName, StructureView } from "./types.js";

/** The one piece of client-side legality: which structure may be clicked now.
 * Everything else (legality, winners, sentences) comes verbatim from the API. */
export function clickableSide(state: SessionState): SideName | "both" | null {
    if (state.status !== "active" || state.turn !== "human") {
        return null;
    }
    if (state.pending === null) {
        return "both"; // challenger picks in either structure
    }
    return state.pending.side === "left" ? "right" : "left";
}

export function validateState(state: unknown): string | null {
    const s = state as Partial<SessionState> | null;
    if (!s || typeof s !== "object") return "missing session state";
    if (!s.structures || !s.structures.left || !s.structures.right) return "missing structures";
    if (!Array.isArray(s.history)) return "missing history";
    if (s.status !== "active" && s.status !== "finished") return `bad status ${String(s.status)}`;
    return null;
}

function escapeHtml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

interface NodeLayout {
    x: number;
    y: number;
}

function circleLayout(size: number, radius: number, cx: number, cy: number): NodeLayout[] {
    return Array.from({ length: size }, (_, i) => {
        const angle = (2 * Math.PI * i) / size - Math.PI / 2;
        return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
    });
}

function roundBadges(history: [number, number][], side: SideName, element: number): number[] {
    const idx = side === "left" ? 0 : 1;
    const rounds: number[] = [];
    history.forEach((pair, i) => {
        if (pair[idx] === element) {
            rounds.push(i + 1);
        }
    });
    return rounds;
}

function structureSvg(
    s: StructureView,
    side: SideName,
    history: [number, number][],
    pending: PendingMove | null,
    clickable: boolean,
): string {
    const w = 260;
    const h = 240;
    const layout = circleLayout(s.size, Math.min(w, h) / 2 - 36, w / 2, h / 2 + 6);
    const parts: string[] = [
        `<svg class="board-svg" viewBox="0 0 ${w} ${h}" data-side="${side}">`,
        `<defs><marker id="arrow-${side}" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">` +
            `<path d="M0,0 L7,3 L0,6 z"/></marker></defs>`,
    ];
    for (const rel of s.relations) {
        if (rel.arity !== 2) continue;
        for (const [a, b] of rel.tuples) {
            const p = layout[a];
            const q = layout[b];
            if (a === b) {
                parts.push(
                    `<circle class="edge loop" cx="${p.x}" cy="${p.y - 20}" r="10" fill="none"/>`,
                );
            } else {
                const dx = q.x - p.x;
                const dy = q.y - p.y;
                const len = Math.hypot(dx, dy) || 1;
                const sx = p.x + (dx / len) * 14;
                const sy = p.y + (dy / len) * 14;
                const ex = q.x - (dx / len) * 16;
                const ey = q.y - (dy / len) * 16;
                parts.push(
                    `<line class="edge" x1="${sx}" y1="${sy}" x2="${ex}" y2="${ey}" marker-end="url(#arrow-${side})"/>`,
                );
            }
        }
    }
    for (let e = 0; e < s.size; e++) {
        const p = layout[e];
        const isPending = pending !== null && pending.side === side && pending.element === e;
        const classes = ["node"];
        if (isPending) classes.push("pending");
        if (clickable) classes.push("clickable");
        parts.push(
            `<g class="${classes.join(" ")}" data-side="${side}" data-element="${e}">` +
                `<circle cx="${p.x}" cy="${p.y}" r="13"/>` +
                `<text x="${p.x}" y="${p.y + 4}" text-anchor="middle">${e}</text>`,
        );
        const badges = roundBadges(history, side, e);
        badges.forEach((round, i) => {
            parts.push(
                `<g class="badge"><circle cx="${p.x + 14 + 12 * i}" cy="${p.y - 12}" r="8"/>` +
                    `<text x="${p.x + 14 + 12 * i}" y="${p.y - 9}" text-anchor="middle">${round}</text></g>`,
            );
        });
        parts.push("</g>");
    }
    parts.push("</svg>");
    return parts.join("");
}

function tupleTables(s: StructureView): string {
    const higher = s.relations.filter((r) => r.arity !== 2);
    if (higher.length === 0) return "";
    const blocks = higher.map((rel) => {
        const rows = rel.tuples
            .map((t) => `<tr><td>${t.join(", ")}</td></tr>`)
            .join("");
        return `<table class="tuple-table"><caption>${escapeHtml(rel.name)}/${rel.arity}</caption>${rows}</table>`;
    });
    return `<div class="tables">${blocks.join("")}</div>`;
}

function banner(state: SessionState): string {
    if (state.status === "finished") {
        const sentence = state.sentence
            ? `<pre class="sentence">${escapeHtml(state.sentence)}</pre>`
            : "";
        return `<div class="banner finished">winner: <strong class="winner">${state.winner}</strong>${sentence}</div>`;
    }
    const turn = state.turn === "human" ? "your move" : "engine thinking";
    const phase = state.pending
        ? `answer the pick ${state.pending.side} ${state.pending.element}`
        : `round ${state.rounds_done + 1} of ${state.rounds_total}`;
    return `<div class="banner active">${turn} &mdash; ${phase}</div>`;
}

function moveLog(state: SessionState): string {
    if (state.move_log.length === 0) return "";
    const items = state.move_log
        .map((m) => `<li>${m.player} (${m.by}): ${m.side} ${m.element}</li>`)
        .join("");
    return `<ol class="move-log">${items}</ol>`;
}

export function renderError(message: string): string {
    return `<div class="error-panel">cannot render game: ${escapeHtml(message)}</div>`;
}

/** Render the whole board from the last API response; no verdicts are computed here. */
export function renderBoard(state: SessionState): string {
    const problem = validateState(state);
    if (problem !== null) {
        return renderError(problem);
    }
    const click = clickableSide(state);
    const sides: SideName[] = ["left", "right"];
    const panels = sides
        .map((side) => {
            const s = state.structures[side];
            const active = click === "both" || click === side;
            return (
                `<div class="panel${active ? " active" : ""}" data-side="${side}">` +
                `<h3>${escapeHtml(s.name)} <small>(${side})</small></h3>` +
                structureSvg(s, side, state.history, state.pending, active) +
                tupleTables(s) +
                "</div>"
            );
        })
        .join("");
    return banner(state) + `<div class="boards">${panels}</div>` + moveLog(state);
}
