/* tslint:disable */
/* eslint-disable */

/**
 * Angles of one synthetic hand and the direction a neutral filter would
 * start debouncing toward.
 */
export class Angles {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * "left", "right" or "none".
     */
    readonly candidate: string;
    extension_deg: number;
    tilt_deg: number;
    valid: boolean;
}

/**
 * A full session engine ticked by the page, fed one synthetic frame per
 * tick from the player's tilt control.
 */
export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `lanes` is clamped to the supported range.
     */
    constructor(seed: number, lanes: number);
    snapshot(): string;
    /**
     * Advances one tick with the player tilting `tilt_deg` (NaN = hand out
     * of view) and returns the snapshot as a JSON line.
     */
    step(tilt_deg: number): string;
    readonly tick: number;
    readonly tick_hz: number;
}

export class FilterRun {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Empty unless the thresholds were rejected.
     */
    readonly error: string;
    readonly event_count: number;
    /**
     * Event lines, one JSON object per line.
     */
    readonly events: string;
    /**
     * Held direction after each frame: `L`, `R` or `.`.
     */
    readonly held: string;
}

/**
 * Measures a pointing hand whose index finger is tilted `tilt_deg` in
 * image space and bent to `extension_deg` at the knuckle.
 */
export function classify(tilt_deg: number, extension_deg: number): Angles;

/**
 * Runs a series of tilt readings (NaN = no hand) through the filter, one
 * frame per millisecond timestamp.
 */
export function filter_events(tilts: Float64Array, enter_deg: number, exit_deg: number, debounce_frames: number): FilterRun;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_angles_free: (a: number, b: number) => void;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly __wbg_filterrun_free: (a: number, b: number) => void;
    readonly __wbg_get_angles_extension_deg: (a: number) => number;
    readonly __wbg_get_angles_tilt_deg: (a: number) => number;
    readonly __wbg_get_angles_valid: (a: number) => number;
    readonly __wbg_set_angles_extension_deg: (a: number, b: number) => void;
    readonly __wbg_set_angles_tilt_deg: (a: number, b: number) => void;
    readonly __wbg_set_angles_valid: (a: number, b: number) => void;
    readonly angles_candidate: (a: number) => [number, number];
    readonly classify: (a: number, b: number) => number;
    readonly demo_new: (a: number, b: number) => number;
    readonly demo_snapshot: (a: number) => [number, number];
    readonly demo_step: (a: number, b: number) => [number, number];
    readonly demo_tick: (a: number) => number;
    readonly demo_tick_hz: (a: number) => number;
    readonly filter_events: (a: number, b: number, c: number, d: number, e: number) => number;
    readonly filterrun_error: (a: number) => [number, number];
    readonly filterrun_event_count: (a: number) => number;
    readonly filterrun_events: (a: number) => [number, number];
    readonly filterrun_held: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
