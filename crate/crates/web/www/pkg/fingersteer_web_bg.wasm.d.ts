/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_angles_free: (a: number, b: number) => void;
export const __wbg_demo_free: (a: number, b: number) => void;
export const __wbg_filterrun_free: (a: number, b: number) => void;
export const __wbg_get_angles_extension_deg: (a: number) => number;
export const __wbg_get_angles_tilt_deg: (a: number) => number;
export const __wbg_get_angles_valid: (a: number) => number;
export const __wbg_set_angles_extension_deg: (a: number, b: number) => void;
export const __wbg_set_angles_tilt_deg: (a: number, b: number) => void;
export const __wbg_set_angles_valid: (a: number, b: number) => void;
export const angles_candidate: (a: number) => [number, number];
export const classify: (a: number, b: number) => number;
export const demo_new: (a: number, b: number) => number;
export const demo_snapshot: (a: number) => [number, number];
export const demo_step: (a: number, b: number) => [number, number];
export const demo_tick: (a: number) => number;
export const demo_tick_hz: (a: number) => number;
export const filter_events: (a: number, b: number, c: number, d: number, e: number) => number;
export const filterrun_error: (a: number) => [number, number];
export const filterrun_event_count: (a: number) => number;
export const filterrun_events: (a: number) => [number, number];
export const filterrun_held: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
