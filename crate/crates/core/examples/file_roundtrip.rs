//! The complex file format: generate, write, parse, validate, and the
//! located errors produced for malformed or invalid input.
//!
//! ```text
//! cargo run --example file_roundtrip
//! ```

use specseq::bicomplex::io::{parse_complex, to_document};
use specseq::bicomplex::{random_complex, AtomMix, Recipe};
use specseq::exactlin::PrimeField;
use specseq::with_complex;

fn main() {
    let f5 = PrimeField::new(5).unwrap();
    let g = random_complex(f5, 42, &Recipe::new(AtomMix::Mixed));
    let text = to_document(&g.complex);
    println!("{} atoms, {} bytes of JSON", g.atoms.len(), text.len());

    let parsed = parse_complex(&text).expect("own output parses");
    println!("field {}, byte-identical reserialization: {}", parsed.field_spec(), parsed.to_document() == text);
    with_complex!(&parsed, c => println!("validation: {}", c.validate()));

    let samples = [
        r#"{"field": "Q", "cells": [{"p": 0, "q": 0, "dim": 1}"#,
        r#"{"field": {"Fp": 6}, "cells": []}"#,
        r#"{"field": "Q", "cells": [{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1}], "d1": [{"p":0,"q":0,"matrix":[["2/4"]]}]}"#,
        r#"{"field": "Q", "cells": [{"p":0,"q":0,"dim":1},{"p":1,"q":0,"dim":1}], "d1": [{"p":0,"q":0,"matrix":[[1, 2]]}]}"#,
    ];
    for sample in samples {
        match parse_complex(sample) {
            Ok(any) => with_complex!(&any, c => println!("parsed; validation: {}", c.validate())),
            Err(e) => println!("error: {e}"),
        }
    }
}
