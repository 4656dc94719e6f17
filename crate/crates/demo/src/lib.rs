use electroid_lab::combinat::Matching;
use electroid_lab::electroid::electroid;
use electroid_lab::io::{electroid_to_json, grove_to_json, network_from_json, plucker_to_json};
use electroid_lab::temperley::embed;
use wasm_bindgen::prelude::*;

/// Grove vector of a network given as JSON.
#[wasm_bindgen]
pub fn groves(network: &str) -> Result<String, String> {
    let net = network_from_json(network).map_err(|e| e.to_string())?;
    Ok(grove_to_json(&net.grove_vector()))
}

/// Plücker coordinates of the network's point in the Grassmannian.
#[wasm_bindgen(js_name = plucker)]
pub fn plucker(network: &str) -> Result<String, String> {
    let net = network_from_json(network).map_err(|e| e.to_string())?;
    Ok(plucker_to_json(&embed(&net.grove_vector())))
}

/// Electroid of a matching written as `(1,4)(2,5)(3,6)`.
#[wasm_bindgen(js_name = electroidOf)]
pub fn electroid_of(matching: &str) -> Result<String, String> {
    let tau = Matching::parse(matching).map_err(|e| e.to_string())?;
    Ok(electroid_to_json(&electroid(&tau)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Y: &str = r#"{"n":3,"shape":[[1],[2],[3]],"interior":1,"edges":[{"u":{"b":1},"v":{"v":1},"w":"1/1"},{"u":{"b":2},"v":{"v":1},"w":"2/1"},{"u":{"b":3},"v":{"v":1},"w":"3/1"}],"rotation":{"b1":[0],"b2":[1],"b3":[2],"v1":[0,1,2]}}"#;

    #[test]
    fn y_network() {
        assert_eq!(
            groves(Y).unwrap(),
            r#"{"n":3,"coords":{"1 2 3":"6/1","1 2|3":"2/1","1 3|2":"3/1","1|2 3":"6/1","1|2|3":"6/1"}}"#
        );
        assert!(plucker(Y).unwrap().contains(r#""2,5":"9/1""#));
    }

    #[test]
    fn top_cell_electroid_is_everything() {
        let out = electroid_of("(1,3)(2,4)").unwrap();
        assert!(out.contains("1 2") && out.contains("1|2"), "{out}");
    }

    #[test]
    fn errors_are_messages() {
        assert!(groves("{").unwrap_err().contains("parse"));
        assert!(electroid_of("(1,2").is_err());
    }
}
