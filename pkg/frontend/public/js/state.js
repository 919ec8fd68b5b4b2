// Minimal observable store; views re-render on every committed change.
export const initialState = {
    view: "setup",
    sessionId: null,
    criteria: [],
    scale: [],
    pairCount: 0,
    answeredCount: 0,
    answered: {},
    currentPair: null,
    serverNextPair: null,
    crSoFar: null,
    worstTriad: null,
    report: null,
    error: null,
    busy: false,
};
export class Store {
    state = { ...initialState };
    listeners = new Set();
    get() {
        return this.state;
    }
    set(patch) {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners)
            listener(this.state);
    }
    reset() {
        this.set({ ...initialState });
    }
    subscribe(listener) {
        this.listeners.add(listener);
        return () => this.listeners.delete(listener);
    }
}
export function pairKey(i, j) {
    return `${i},${j}`;
}
export function allPairs(criteria) {
    const pairs = [];
    for (let i = 0; i < criteria.length; i++) {
        for (let j = i + 1; j < criteria.length; j++) {
            pairs.push({ i, j, left: criteria[i], right: criteria[j] });
        }
    }
    return pairs;
}
