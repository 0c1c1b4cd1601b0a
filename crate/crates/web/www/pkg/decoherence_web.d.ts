/* tslint:disable */
/* eslint-disable */

export class CatCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Time at which the decoherence factor reaches e⁻¹, if it ever does.
     */
    readonly coherenceTime: number | undefined;
    readonly dFactor: Float64Array;
    readonly times: Float64Array;
    readonly visibility: Float64Array;
}

export class CoherenceMap {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Largest |ρ(x, −x)| relative to its initial value.
     */
    readonly coherence: Float64Array;
    readonly halfWidth: number;
    readonly points: number;
    /**
     * The same quantity for an infinitely heavy particle, where ρ(x, −x) decays as exp(−4Λ t x²).
     */
    readonly predicted: Float64Array;
    readonly purity: number;
    readonly times: Float64Array;
    /**
     * |ρ(x, x′)| at the final time, row-major, scaled to a peak of 1.
     */
    readonly values: Float64Array;
}

export class ZenoCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Population of the upper level with the pointer attached.
     */
    readonly p2: Float64Array;
    readonly regime: string;
    readonly tResolve: number;
    readonly times: Float64Array;
    /**
     * The same population with the pointer decoupled.
     */
    readonly unmonitored: Float64Array;
}

/**
 * Fringe visibility of a damped cavity cat of real amplitude α.
 */
export function catCurve(alpha: number, kappa: number, t_max: number, samples: number): CatCurve;

/**
 * Evolve two separated packets under localization and return the final |ρ(x, x′)|.
 */
export function coherenceMap(separation: number, lambda: number, mass: number, time: number): CoherenceMap;

/**
 * Transition probability of a two-level system whose levels are read by a pointer of strength γ.
 */
export function zenoCurve(v: number, e: number, gamma: number): ZenoCurve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_catcurve_free: (a: number, b: number) => void;
    readonly __wbg_coherencemap_free: (a: number, b: number) => void;
    readonly __wbg_zenocurve_free: (a: number, b: number) => void;
    readonly catCurve: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly catcurve_coherenceTime: (a: number) => [number, number];
    readonly catcurve_dFactor: (a: number) => [number, number];
    readonly catcurve_times: (a: number) => [number, number];
    readonly catcurve_visibility: (a: number) => [number, number];
    readonly coherenceMap: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly coherencemap_coherence: (a: number) => [number, number];
    readonly coherencemap_halfWidth: (a: number) => number;
    readonly coherencemap_points: (a: number) => number;
    readonly coherencemap_predicted: (a: number) => [number, number];
    readonly coherencemap_purity: (a: number) => number;
    readonly coherencemap_times: (a: number) => [number, number];
    readonly coherencemap_values: (a: number) => [number, number];
    readonly zenoCurve: (a: number, b: number, c: number) => [number, number, number];
    readonly zenocurve_p2: (a: number) => [number, number];
    readonly zenocurve_regime: (a: number) => [number, number];
    readonly zenocurve_times: (a: number) => [number, number];
    readonly zenocurve_unmonitored: (a: number) => [number, number];
    readonly zenocurve_tResolve: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
