use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use magnus_core::alexander::{factorization_with, find_transversal};
use magnus_core::gen;
use magnus_core::magnus::{mag_heegaard, mag_kernel};
use magnus_core::surface::PointedHermModule;

fn forms(c: &mut Criterion) {
    let mut r = gen::rng(1);
    let phi = gen::random_phi(&mut r, 2, 6, 3);
    c.bench_function("form genus 3", |b| b.iter(|| PointedHermModule::build(3, black_box(&phi)).unwrap()));
}

fn magnus(c: &mut Criterion) {
    let mut r = gen::rng(2);
    let hs: Vec<_> = (0..8).map(|_| gen::random_heegaard(&mut r, 3, 2, 12)).collect();
    let cs: Vec<_> = hs.iter().map(|h| h.compile()).collect();
    c.bench_function("mag_kernel x8", |b| {
        b.iter(|| cs.iter().map(|x| mag_kernel(black_box(x)).unwrap()).count())
    });
    c.bench_function("mag_heegaard x8", |b| {
        b.iter(|| hs.iter().map(|x| mag_heegaard(black_box(x)).unwrap()).count())
    });
}

fn alexander(c: &mut Criterion) {
    let mut r = gen::rng(3);
    let cs: Vec<_> = (0..8).map(|_| gen::random_heegaard(&mut r, 2, 1, 10).compile()).collect();
    let rels: Vec<_> = cs.iter().map(|x| mag_kernel(x).unwrap()).collect();
    let ws: Vec<_> = rels.iter().map(find_transversal).collect();
    c.bench_function("factorization x8", |b| {
        b.iter(|| {
            cs.iter().zip(&rels).zip(&ws).map(|((x, rel), w)| factorization_with(black_box(x), rel, w).unwrap()).count()
        })
    });
}

criterion_group!(benches, forms, magnus, alexander);
criterion_main!(benches);
