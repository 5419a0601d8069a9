"""Exact tools for generalized regular bent functions over Z_q via bent
rectangles: transforms, rectangle predicates, affine equivalence,
constructions and plane-partition machinery."""

from .qalg import CycloValue, QFunction, anf, anf_degree, chi, restrict
from .spectral import (Spectrum, inverse_wht, is_bent, is_regular_bent,
                       plateaued_order, quartet_combine, spectral_profile,
                       wht, wht_numeric)
from .rectangle import (Rectangle, cells, column_spectra, four_row_check,
                        is_bent_rectangle, rectangle, rectangle_function,
                        row_functions, to_shape, transpose, two_row_check)
from .planes import AffinePlane, all_planes, all_subspaces
from .affine_group import (AffineMap, ElementaryTransform, LinearMap,
                           affine_equivalent, apply_transform,
                           apply_transform_rect, decompose_gl, is_normal,
                           predict_spectrum, realize_affine)
from .constructions import (BiaffineMap, BiaffinePhase, BilinearFamily,
                            Spread, biaffine_square, bilinear_square,
                            carlet_flip, dillon, direct_sum, field_family,
                            field_spread, maiorana, rothaus, stretch)
from .partitions import (PlanePartition, apart2_form,
                         balanced_restriction_sums, bent_count,
                         canonical_partitions_v3, count_constructed,
                         count_partitions, count_partitions_formula,
                         enumerate_partitions, gaussian_coeff, is_primitive,
                         lift_canonical, partition_bent)

__all__ = [name for name in dir() if not name.startswith("_")]
