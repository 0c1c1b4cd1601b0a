/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_catcurve_free: (a: number, b: number) => void;
export const __wbg_coherencemap_free: (a: number, b: number) => void;
export const __wbg_zenocurve_free: (a: number, b: number) => void;
export const catCurve: (a: number, b: number, c: number, d: number) => [number, number, number];
export const catcurve_coherenceTime: (a: number) => [number, number];
export const catcurve_dFactor: (a: number) => [number, number];
export const catcurve_times: (a: number) => [number, number];
export const catcurve_visibility: (a: number) => [number, number];
export const coherenceMap: (a: number, b: number, c: number, d: number) => [number, number, number];
export const coherencemap_coherence: (a: number) => [number, number];
export const coherencemap_halfWidth: (a: number) => number;
export const coherencemap_points: (a: number) => number;
export const coherencemap_predicted: (a: number) => [number, number];
export const coherencemap_purity: (a: number) => number;
export const coherencemap_times: (a: number) => [number, number];
export const coherencemap_values: (a: number) => [number, number];
export const zenoCurve: (a: number, b: number, c: number) => [number, number, number];
export const zenocurve_p2: (a: number) => [number, number];
export const zenocurve_regime: (a: number) => [number, number];
export const zenocurve_times: (a: number) => [number, number];
export const zenocurve_unmonitored: (a: number) => [number, number];
export const zenocurve_tResolve: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
