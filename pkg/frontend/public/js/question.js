// One comparison at a time: the prompt, the five scale buttons, progress,
// the live CR gauge, the worst-triad hint, and the answered-pair list used
// to revisit earlier judgments.
import { renderGauge } from "./gauge.js";
import { allPairs, pairKey } from "./state.js";
export function activePair(state) {
    return state.currentPair ?? state.serverNextPair;
}
export function renderQuestion(root, state, actions) {
    root.innerHTML = "";
    const pair = activePair(state);
    const progress = document.createElement("p");
    progress.dataset.testid = "progress";
    progress.textContent = `${state.answeredCount} / ${state.pairCount}`;
    root.appendChild(progress);
    const gaugeSlot = document.createElement("div");
    renderGauge(gaugeSlot, state.crSoFar);
    root.appendChild(gaugeSlot);
    if (pair !== null) {
        const prompt = document.createElement("h2");
        prompt.dataset.testid = "prompt";
        prompt.textContent = `How important is "${pair.left}" compared to "${pair.right}"?`;
        root.appendChild(prompt);
        const buttons = document.createElement("div");
        buttons.className = "scale-buttons";
        for (const entry of state.scale) {
            const button = document.createElement("button");
            button.dataset.testid = `scale-${entry.value}`;
            button.textContent = `${entry.value} — ${entry.label}`;
            button.disabled = state.busy;
            button.addEventListener("click", () => actions.answer(entry.value));
            buttons.appendChild(button);
        }
        root.appendChild(buttons);
    }
    else {
        const done = document.createElement("p");
        done.textContent = "All pairs answered.";
        root.appendChild(done);
        const view = document.createElement("button");
        view.dataset.testid = "view-report";
        view.textContent = "View report";
        view.addEventListener("click", () => actions.showReport());
        root.appendChild(view);
    }
    if (state.error) {
        const error = document.createElement("p");
        error.className = "error";
        error.dataset.testid = "error";
        error.textContent = state.error;
        root.appendChild(error);
    }
    if (state.worstTriad) {
        const hint = document.createElement("p");
        hint.className = "triad-hint";
        hint.dataset.testid = "triad-hint";
        hint.textContent = `Least consistent triad: ${state.worstTriad.items.join(" / ")}`;
        root.appendChild(hint);
        const [a, b, c] = state.worstTriad.indices;
        const names = state.worstTriad.items;
        const triadPairs = [
            { i: a, j: b, left: names[0], right: names[1] },
            { i: a, j: c, left: names[0], right: names[2] },
            { i: b, j: c, left: names[1], right: names[2] },
        ];
        const shortcut = document.createElement("button");
        shortcut.dataset.testid = "revisit-triad";
        shortcut.textContent = "Revisit worst triad";
        shortcut.addEventListener("click", () => actions.revisit(triadPairs[0]));
        root.appendChild(shortcut);
    }
    root.appendChild(renderPairList(state, actions));
}
function renderPairList(state, actions) {
    const list = document.createElement("ol");
    list.className = "pair-list";
    list.dataset.testid = "pair-list";
    for (const pair of allPairs(state.criteria)) {
        const item = document.createElement("li");
        const link = document.createElement("button");
        link.dataset.testid = `pair-${pair.i}-${pair.j}`;
        const value = state.answered[pairKey(pair.i, pair.j)];
        link.textContent = `${pair.left} vs ${pair.right}: ${value ?? "—"}`;
        link.addEventListener("click", () => actions.revisit(pair));
        item.appendChild(link);
        list.appendChild(item);
    }
    return list;
}
