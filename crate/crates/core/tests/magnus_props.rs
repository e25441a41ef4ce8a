use magnus_core::cobordism::CobPresentation;
use magnus_core::gen::{heegaard_over, random_heegaard, rng};
use magnus_core::magnus::{mag_heegaard, mag_kernel};

#[test]
fn two_path_oracle() {
    let mut r = rng(11);
    for _ in 0..30 {
        let nv = 2;
        let h = random_heegaard(&mut r, 3, nv, 12);
        let a = mag_heegaard(&h).unwrap();
        let b = mag_kernel(&h.compile()).unwrap();
        assert!(a.equal(&b).unwrap(), "{}", h.to_dsl());
    }
}

#[test]
fn functoriality() {
    let mut r = rng(12);
    for _ in 0..10 {
        let m = random_heegaard(&mut r, 2, 1, 12);
        let Some(n) = heegaard_over(&mut r, &m.phi_plus(), 1, 12) else { continue };
        let (cm, cn) = (m.compile(), n.compile());
        let glued = mag_kernel(&CobPresentation::amalgamate(&cm, &cn).unwrap()).unwrap();
        let comp = mag_kernel(&cn).unwrap().compose(&mag_kernel(&cm).unwrap()).unwrap();
        assert!(glued.equal(&comp).unwrap());
    }
}

