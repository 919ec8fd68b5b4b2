// Shared display formatting. Elements carrying server numbers also expose
// the raw value via data-raw so tests can compare bit-for-bit.
export function formatCr(cr) {
    return cr.toFixed(4);
}
export function formatWeight(weight) {
    return `${(weight * 100).toFixed(3)} %`;
}
export function setRaw(el, value) {
    el.dataset.raw = String(value);
}
