export type PlayerName = "spoiler" | "duplicator";
export type SideName = "left" | "right";

export interface RelationView {
    name: string;
    arity: number;
    tuples: number[][];
}

export interface StructureView {
    name: string;
    size: number;
    relations: RelationView[];
}

export interface PendingMove {
    side: SideName;
    element: number;
}

export interface MoveLogEntry {
    by: "human" | "engine";
    player: PlayerName;
    side: SideName;
    element: number;
}

export interface SessionState {
    id: string;
    status: "active" | "finished";
    winner: PlayerName | null;
    human_role: PlayerName;
    rounds_total: number;
    rounds_done: number;
    turn: "human" | "engine" | null;
    structures: { left: StructureView; right: StructureView };
    history: [number, number][];
    pending: PendingMove | null;
    move_log: MoveLogEntry[];
    sentence: string | null;
}

export interface CheckReport {
    equivalent: boolean;
    separation_level: number | null;
    sentence: string | null;
    winner: PlayerName;
}

export interface ApiErrorBody {
    code: string;
    message: string;
}
