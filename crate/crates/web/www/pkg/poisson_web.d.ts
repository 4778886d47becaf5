/* tslint:disable */
/* eslint-disable */

/**
 * The `[v_i, w_j]` block of the bracket table and the presentation for a
 * catalog entry such as `D4-` with the given `lambda` and `mu` (blank for
 * zero).
 */
export function bracket_table(name: string, lambda: string, mu: string): string;

/**
 * Dimensions and canonical bases for `f (1 + h) dx^dy`.
 */
export function cohomology(f: string, h: string, weights: string): string;

/**
 * Normal form of the bivector `coef dx^dy` for a catalog entry, with the
 * reduction trace.
 */
export function normalize(name: string, lambda: string, mu: string, coef: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bracket_table: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly cohomology: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly normalize: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
