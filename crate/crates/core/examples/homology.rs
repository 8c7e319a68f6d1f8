//! GF(2) Betti numbers of the gadgets, absolute and relative.
//!
//!     cargo run --example homology

use shellkit::gadgets::{blade, choice_gadget, hemisphere, tricorne, turbine, HemisphereStyle};
use shellkit::homology::{betti, relative_betti};
use shellkit::RelativeComplex;

fn main() {
    for g in [blade(), tricorne(), hemisphere(), turbine(3).unwrap()] {
        println!("{:<12} Betti {}", g.name, betti(&g.complex));
    }
    let choice = choice_gadget("x", HemisphereStyle::Separated).unwrap();
    println!("{:<12} Betti {}", choice.name, betti(&choice.complex));

    let d = hemisphere();
    let rc = RelativeComplex::new(d.complex.clone(), d.marked("equator").unwrap().clone()).unwrap();
    println!("hemisphere rel boundary: Betti {}, reduced Euler characteristic {}", relative_betti(&rc).unwrap(), rc.reduced_euler_characteristic());
    for n in 2..=4 {
        let t = turbine(n).unwrap();
        let rc = RelativeComplex::new(t.complex.clone(), t.marked("tree").unwrap().clone()).unwrap();
        println!("turbine:{n} rel gluing tree: Betti {}", relative_betti(&rc).unwrap());
    }
}
