function linearOrder(m: number): string {
    const lines = [`structure L${m}`, `universe ${m}`, "relation E 2"];
    for (let i = 0; i < m; i++) {
        for (let j = i + 1; j < m; j++) {
            lines.push(`${i} ${j}`);
        }
    }
    lines.push("end");
    return lines.join("\n") + "\n";
}

function cycle(m: number): string {
    const lines = [`structure C${m}`, `universe ${m}`, "relation E 2"];
    for (let i = 0; i < m; i++) {
        lines.push(`${i} ${(i + 1) % m}`);
    }
    lines.push("end");
    return lines.join("\n") + "\n";
}

function path(m: number): string {
    const lines = [`structure P${m}`, `universe ${m}`, "relation E 2"];
    for (let i = 0; i + 1 < m; i++) {
        lines.push(`${i} ${i + 1}`);
    }
    lines.push("end");
    return lines.join("\n") + "\n";
}

export interface Preset {
    label: string;
    text: string;
}

export const PRESETS: Preset[] = [
    ...Array.from({ length: 8 }, (_, i) => ({
        label: `linear order L${i + 1}`,
        text: linearOrder(i + 1),
    })),
    { label: "cycle C6", text: cycle(6) },
    { label: "path P6", text: path(6) },
];
