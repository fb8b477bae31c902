//! WebAssembly bindings for the browser demo. Every export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use trispine::construct::{path_from_lens, Route};
use trispine::evenfarey::even_distance;
use trispine::farey::{default_cap, farey_distance};
use trispine::lens::{normalize, twisted_bound, untwisted_bound};
use trispine::render::render_svg;
use trispine::schema::{lens_bounds_json, DiagramDocument};
use trispine::{Error, Slope};

/// Largest `p` the demo accepts, to keep each call interactive.
pub const DEMO_P_MAX: i32 = 2000;

fn reply(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_p(p: i32) -> Result<(), String> {
    if p > DEMO_P_MAX {
        Err(format!("p is limited to {DEMO_P_MAX} in the demo"))
    } else {
        Ok(())
    }
}

pub fn farey_path_value(a: &str, b: &str, even: bool) -> Result<Value, String> {
    let a: Slope = a.trim().parse().map_err(|e: Error| e.to_string())?;
    let b: Slope = b.trim().parse().map_err(|e: Error| e.to_string())?;
    for s in [a, b] {
        if s.complexity() > DEMO_P_MAX as u64 {
            return Err(format!("{s} is too large for the demo"));
        }
    }
    let cap = default_cap(&[a, b]);
    let found = if even { even_distance(a, b, cap) } else { farey_distance(a, b, cap) };
    match found {
        Ok(g) => Ok(json!({
            "distance": g.distance,
            "path": g.path.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "exactness": g.exactness.to_string(),
        })),
        Err(Error::CapExhausted { upper_bound, path, .. }) => Ok(json!({
            "distance": upper_bound,
            "path": path.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "exactness": "upper_bound",
        })),
        Err(e) => Err(e.to_string()),
    }
}

pub fn lens_bounds_value(p: i32, q: i32) -> Result<Value, String> {
    check_p(p)?;
    let lens = normalize(p.into(), q.into()).map_err(|e| e.to_string())?;
    let cap = lens.default_cap();
    let t = twisted_bound(lens, cap).map_err(|e| e.to_string())?;
    let u = untwisted_bound(lens, cap).map_err(|e| e.to_string())?;
    Ok(lens_bounds_json(lens, &t, &u))
}

pub fn lens_diagram_value(p: i32, q: i32, even: bool) -> Result<Value, String> {
    check_p(p)?;
    let lens = normalize(p.into(), q.into()).map_err(|e| e.to_string())?;
    let route = if even { Route::Even } else { Route::Any };
    let path = path_from_lens(lens, route, lens.default_cap()).map_err(|e| e.to_string())?;
    let doc = DiagramDocument::build(&path).map_err(|e| e.to_string())?;
    let svg = render_svg(&doc).map_err(|e| e.to_string())?;
    Ok(json!({
        "svg": svg,
        "genus": doc.stats.total_genus,
        "normal_form": doc.classification.normal_form,
        "framings": doc.kirby.curves.iter().map(|c| c.framing.0.to_string()).collect::<Vec<_>>(),
    }))
}

/// `{distance, path, exactness}` between two slopes `"p/q"`.
#[wasm_bindgen]
pub fn farey_path(a: &str, b: &str, even: bool) -> String {
    reply(farey_path_value(a, b, even))
}

/// Twisted and untwisted bounds for `L(p, q)`.
#[wasm_bindgen]
pub fn lens_bounds(p: i32, q: i32) -> String {
    reply(lens_bounds_value(p, q))
}

/// `{svg, genus, normal_form, framings}` for the diagram built from `L(p, q)`.
#[wasm_bindgen]
pub fn lens_diagram(p: i32, q: i32, even: bool) -> String {
    reply(lens_diagram_value(p, q, even))
}
