//! WebAssembly bindings for the browser demo in `www/`.

pub mod api;

use wasm_bindgen::prelude::*;

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn conjugate(instance: &str, lo: f64, hi: f64, n: usize) -> Result<String, JsValue> {
    js(api::conjugate(instance, lo, hi, n))
}

#[wasm_bindgen]
pub fn hull(instance: &str, lo: f64, hi: f64, n: usize) -> Result<String, JsValue> {
    js(api::hull(instance, lo, hi, n))
}

#[wasm_bindgen]
pub fn findings(name: &str) -> Result<String, JsValue> {
    js(api::findings(name))
}

#[wasm_bindgen]
pub fn preset(name: &str) -> Result<String, JsValue> {
    js(api::preset(name))
}
