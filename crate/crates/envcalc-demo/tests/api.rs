use envcalc_demo::api;
use serde_json::Value;

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn interval_conjugate_is_the_positive_part() {
    let f = api::preset("open-interval").unwrap();
    let out = parse(&api::conjugate(&f, -2.0, 2.0, 9).unwrap());
    let ys = out["y"].as_array().unwrap();
    for (y, v) in ys.iter().zip(out["out"].as_array().unwrap()) {
        assert_eq!(v.as_f64().unwrap(), y.as_f64().unwrap().max(0.0));
    }
    assert!(out["f"][0].is_null(), "f = +inf left of the interval");
}

#[test]
fn hull_closes_the_open_interval() {
    let f = api::preset("open-interval").unwrap();
    let out = parse(&api::hull(&f, 0.0, 1.0, 5).unwrap());
    assert!(out["f"][0].is_null());
    assert_eq!(out["out"][0].as_f64(), Some(0.0));
    assert_eq!(out["out"][4].as_f64(), Some(0.0));
}

#[test]
fn grid_input_is_accepted() {
    let g = r#"{"kind":"grid","dim":1,"points":[[-1],[0],[1]],"values":[1,0,1]}"#;
    let out = parse(&api::conjugate(g, -2.0, 2.0, 5).unwrap());
    assert_eq!(out["out"][2].as_f64(), Some(0.0));
    assert_eq!(out["out"][0].as_f64(), Some(1.0));
}

#[test]
fn gallery_findings_reproduce() {
    let rows = parse(&api::findings("open-interval").unwrap());
    assert!(rows.as_array().unwrap().iter().all(|r| r["ok"] == Value::Bool(true)));
    assert!(api::findings("nope").is_err());
}

#[test]
fn bad_input_is_an_error() {
    assert!(api::conjugate("{", -1.0, 1.0, 3).is_err());
    let f = api::preset("open-interval").unwrap();
    assert!(api::hull(&f, 1.0, -1.0, 3).is_err());
    assert!(api::preset("quadratic").is_err());
}
