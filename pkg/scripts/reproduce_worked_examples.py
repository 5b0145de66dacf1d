#!/usr/bin/env python3
"""Print the worked 4x4 examples: the consistification trace, the EM
counterexample pair and the axiom independence table."""

import numpy as np

from pcmaxioms import (
    Triad,
    TriadTransform,
    apply_triad_transform,
    build_from_upper_triangle,
    consistify,
    em_weights,
    independence_demo,
    llsm_weights,
)
from pcmaxioms.io import matrix_to_text, trace_to_text


def main():
    np.set_printoptions(precision=4, suppress=True)

    A = build_from_upper_triangle([1, 1, 16, 1, 1, 1], 4)
    print("LLSM weights of the outlier matrix:", llsm_weights(A).weights, "(times 9:", 9 * llsm_weights(A).weights, ")")
    print(trace_to_text(consistify(A), precision=4))

    B = build_from_upper_triangle([1, 1, 8, 1, 1, 1], 4)
    B_hat = apply_triad_transform(B, TriadTransform(Triad.from_one_based(1, 2, 4), 2.0))
    print("EM counterexample, before and after triad (1,2,4) with alpha = 2:")
    print(matrix_to_text(B_hat, 4))
    for label, M in (("before", B), ("after", B_hat)):
        res = em_weights(M)
        print(f"  EM {label:<6}: {res.weights.weights}  lambda_max = {res.lambda_max:.6f}")
        print(f"  LLSM {label:<4}: {llsm_weights(M).weights}")
    print()
    print(independence_demo().render())


if __name__ == "__main__":
    main()
