/* tslint:disable */
/* eslint-disable */

/**
 * Registered identity ids, newline separated.
 */
export function identity_ids(): string;

/**
 * `P_0 .. P_n` at `samples` equally spaced angles in `[0, pi]`.
 *
 * Returns `(n + 1) * samples` real parts, one row per degree.
 */
export function jacobi_curves(n: number, alpha: number, beta: number, q: number, samples: number): Float64Array;

/**
 * Poisson kernel by its bilinear series and by the three-term form: `[series, three_term, residual]`.
 */
export function poisson_kernel(alpha: number, beta: number, q: number, theta_x: number, theta_y: number, t: number): Float64Array;

/**
 * Runs the seeded verification of one identity and returns its JSON report.
 */
export function verify_identity(id: string, trials: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly identity_ids: () => [number, number];
    readonly jacobi_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly poisson_kernel: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly verify_identity: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
