use std::sync::Arc;

use super::category::{CatBuilder, FinCat};
use super::functor::FinFunctor;

/// A binary product `A × B` with its projections.
///
/// Object `(a, b)` has index `a * |ob B| + b`; morphism `(f, g)` has index
/// `f * |mor B| + g`.
#[derive(Clone, Debug)]
pub struct Product {
    pub cat: Arc<FinCat>,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

pub fn product(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Product {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let (ma, mb) = (a.num_morphisms(), b.num_morphisms());
    let mut builder = CatBuilder::new();
    for x in 0..na {
        for y in 0..nb {
            builder.add_object(format!("({},{})", a.object_name(x), b.object_name(y)));
        }
    }
    for f in 0..ma {
        for g in 0..mb {
            builder.add_morphism(
                format!("({},{})", a.name(f), b.name(g)),
                a.dom(f) * nb + b.dom(g),
                a.cod(f) * nb + b.cod(g),
            );
        }
    }
    for x in 0..na {
        for y in 0..nb {
            builder.set_identity(x * nb + y, a.id(x) * mb + b.id(y));
        }
    }
    let cat = Arc::new(builder.build(|g, f| a.compose(g / mb, f / mb) * mb + b.compose(g % mb, f % mb)));
    let left = FinFunctor::new_unchecked(
        cat.clone(),
        a.clone(),
        (0..na * nb).map(|o| o / nb).collect(),
        (0..ma * mb).map(|m| m / mb).collect(),
    );
    let right = FinFunctor::new_unchecked(
        cat.clone(),
        b.clone(),
        (0..na * nb).map(|o| o % nb).collect(),
        (0..ma * mb).map(|m| m % mb).collect(),
    );
    Product { cat, left, right }
}

impl Product {
    /// The pairing `⟨f, g⟩: X → A × B`.
    pub fn pair(&self, f: &FinFunctor, g: &FinFunctor) -> FinFunctor {
        let nb = self.right.target().num_objects();
        let mb = self.right.target().num_morphisms();
        FinFunctor::new_unchecked(
            f.source().clone(),
            self.cat.clone(),
            f.omap().iter().zip(g.omap()).map(|(&x, &y)| x * nb + y).collect(),
            f.mmap().iter().zip(g.mmap()).map(|(&x, &y)| x * mb + y).collect(),
        )
    }
}

/// `f × g : A × B → C × D` between the given products.
pub fn product_functor(f: &FinFunctor, g: &FinFunctor, from: &Product, to: &Product) -> FinFunctor {
    to.pair(&f.after(&from.left), &g.after(&from.right))
}

/// The disjoint union `A + B` with both injections.
pub fn coproduct(a: &Arc<FinCat>, b: &Arc<FinCat>) -> (Arc<FinCat>, FinFunctor, FinFunctor) {
    let (na, ma) = (a.num_objects(), a.num_morphisms());
    let mut builder = CatBuilder::new();
    for x in a.objects() {
        builder.add_object(format!("l.{}", a.object_name(x)));
    }
    for y in b.objects() {
        builder.add_object(format!("r.{}", b.object_name(y)));
    }
    for f in a.morphisms() {
        builder.add_morphism(format!("l.{}", a.name(f)), a.dom(f), a.cod(f));
    }
    for g in b.morphisms() {
        builder.add_morphism(format!("r.{}", b.name(g)), na + b.dom(g), na + b.cod(g));
    }
    for x in a.objects() {
        builder.set_identity(x, a.id(x));
    }
    for y in b.objects() {
        builder.set_identity(na + y, ma + b.id(y));
    }
    let cat = Arc::new(builder.build(|g, f| if g < ma { a.compose(g, f) } else { ma + b.compose(g - ma, f - ma) }));
    let inl = FinFunctor::new_unchecked(a.clone(), cat.clone(), a.objects().collect(), a.morphisms().collect());
    let inr = FinFunctor::new_unchecked(
        b.clone(),
        cat.clone(),
        b.objects().map(|y| na + y).collect(),
        b.morphisms().map(|g| ma + g).collect(),
    );
    (cat, inl, inr)
}
