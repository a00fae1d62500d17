import { ApiClient, ApiError } from "./api.js";
import { PRESETS } from "./presets.js";
import type { PlayerName, SessionState, SideName } from "./types.js";
import { clickableSide, renderBoard, renderError } from "./view.js";

const api = new ApiClient("");

let state: SessionState | null = null;
let inFlight = false;

function el<T extends HTMLElement>(id: string): T {
    return document.getElementById(id) as T;
}

function toast(message: string): void {
    const box = el<HTMLDivElement>("toast");
    box.textContent = message;
    box.classList.add("visible");
    setTimeout(() => box.classList.remove("visible"), 4000);
}

function redraw(): void {
    const board = el<HTMLDivElement>("board");
    if (state === null) {
        board.innerHTML = "";
        return;
    }
    board.innerHTML = renderBoard(state);
    for (const node of board.querySelectorAll<SVGGElement>("g.node.clickable")) {
        node.addEventListener("click", () => {
            const side = node.dataset.side as SideName;
            const element = Number(node.dataset.element);
            void onPick(side, element);
        });
    }
}

async function onPick(side: SideName, element: number): Promise<void> {
    if (state === null || inFlight) return;
    const allowed = clickableSide(state);
    if (allowed !== "both" && allowed !== side) {
        return; // wrong-structure click blocked before any request
    }
    inFlight = true;
    try {
        state = await api.submitMove(state.id, side, element, state.move_log.length);
        redraw();
    } catch (e) {
        toast(e instanceof ApiError ? `${e.code}: ${e.message}` : String(e));
    } finally {
        inFlight = false;
    }
}

function fillPresetPickers(): void {
    for (const id of ["preset-left", "preset-right"]) {
        const select = el<HTMLSelectElement>(id);
        const custom = document.createElement("option");
        custom.value = "";
        custom.textContent = "custom (edit text below)";
        select.appendChild(custom);
        PRESETS.forEach((preset, i) => {
            const option = document.createElement("option");
            option.value = String(i);
            option.textContent = preset.label;
            select.appendChild(option);
        });
        select.addEventListener("change", () => {
            if (select.value !== "") {
                const target = id === "preset-left" ? "text-left" : "text-right";
                el<HTMLTextAreaElement>(target).value = PRESETS[Number(select.value)].text;
            }
        });
    }
    el<HTMLSelectElement>("preset-left").value = "1";
    el<HTMLSelectElement>("preset-right").value = "2";
    el<HTMLTextAreaElement>("text-left").value = PRESETS[1].text;
    el<HTMLTextAreaElement>("text-right").value = PRESETS[2].text;
}

async function onNewGame(): Promise<void> {
    if (inFlight) return;
    inFlight = true;
    try {
        const role = el<HTMLSelectElement>("role").value as PlayerName;
        const rounds = Number(el<HTMLInputElement>("rounds").value);
        if (state !== null) {
            void api.deleteSession(state.id).catch(() => undefined);
        }
        state = await api.createSession(
            el<HTMLTextAreaElement>("text-left").value,
            el<HTMLTextAreaElement>("text-right").value,
            rounds,
            role,
        );
        redraw();
    } catch (e) {
        el<HTMLDivElement>("board").innerHTML = renderError(
            e instanceof ApiError ? `${e.code}: ${e.message}` : String(e),
        );
    } finally {
        inFlight = false;
    }
}

export function start(): void {
    fillPresetPickers();
    el<HTMLButtonElement>("new-game").addEventListener("click", () => void onNewGame());
}

if (typeof document !== "undefined" && document.getElementById("board") !== null) {
    start();
}
