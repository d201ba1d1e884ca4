"""Tables transcribed from the reference tables (Pauli words, leftmost = first qubit).

Each pair lists the W column first, then the What column.
"""

SU8_CENTER = ["ZII", "IZI", "IIZ", "ZZI", "ZIZ", "IZZ", "ZZZ"]

# intrinsic su(8); index k is the label k written in three bits
SU8_INTRINSIC = {
    1: (["IIX", "ZIX", "IZX", "ZZX"], ["IIY", "ZIY", "IZY", "ZZY"]),
    2: (["IXI", "ZXI", "IXZ", "ZXZ"], ["IYI", "ZYI", "IYZ", "ZYZ"]),
    3: (["IXX", "IYY", "ZXX", "ZYY"], ["IYX", "IXY", "ZYX", "ZXY"]),
    4: (["XII", "XZI", "XIZ", "XZZ"], ["YII", "YZI", "YIZ", "YZZ"]),
    5: (["XIX", "YIY", "XZX", "YZY"], ["YIX", "XIY", "YZX", "XZY"]),
    6: (["XXI", "YYI", "XXZ", "YYZ"], ["YXI", "XYI", "YXZ", "XYZ"]),
    7: (["XXX", "YYX", "YXY", "XYY"], ["YXX", "XYX", "XXY", "YYY"]),
}

# seed step: Ŵ_1 grown from I x I x s1
SU8_SEED_HAT = ["IIY", "ZIY", "IZY", "ZZY"]

SU8_NONDIAG_CENTER = ["XII", "IXI", "IIX", "XXI", "XIX", "IXX", "XXX"]
SU8_NONDIAG = {
    1: (["ZII", "ZXI", "ZIX", "ZXX"], ["YII", "YXI", "YIX", "YXX"]),
    2: (["IZI", "XZI", "IZX", "XZX"], ["IYI", "XYI", "IYX", "XYX"]),
    3: (["IIZ", "XIZ", "IXZ", "XXZ"], ["IIY", "XIY", "IXY", "XXY"]),
    4: (["ZZI", "YYI", "ZZX", "YYX"], ["YZI", "ZYI", "YZX", "ZYX"]),
    5: (["ZIZ", "YIY", "ZXZ", "YXY"], ["YIZ", "ZIY", "YXZ", "ZXY"]),
    6: (["IZZ", "IYY", "XZZ", "XYY"], ["IYZ", "IZY", "XYZ", "XZY"]),
    7: (["ZZZ", "YYZ", "YZY", "ZYY"], ["YZZ", "ZYZ", "ZZY", "YYY"]),
}

# intrinsic su(6) in Gell-Mann x Pauli form: "mK P" is mu_K (x) sigma_P, "I P" is I_3 (x) sigma_P
SU6_CENTER = ["I Z", "m3 I", "m8 I", "m3 Z", "m8 Z"]
SU6_INTRINSIC = {
    1: (["I X", "m3 X", "m8 X"], ["I Y", "m3 Y", "m8 Y"]),
    2: (["m1 I", "m1 Z"], ["m2 I", "m2 Z"]),
    3: (["m1 X", "m2 Y"], ["m1 Y", "m2 X"]),
    4: (["m4 I", "m4 Z"], ["m5 I", "m5 Z"]),
    5: (["m4 X", "m5 Y"], ["m4 Y", "m5 X"]),
    6: (["m6 I", "m6 Z"], ["m7 I", "m7 Z"]),
    7: (["m6 X", "m7 Y"], ["m6 Y", "m7 X"]),
}

# intrinsic su(6) in lambda form: (i, j) subscripts per label
SU6_LAMBDA = {
    1: [(1, 2), (3, 4), (5, 6)],
    2: [(1, 3), (2, 4)],
    3: [(1, 4), (2, 3)],
    4: [(1, 5), (2, 6)],
    5: [(1, 6), (2, 5)],
    6: [(3, 5), (4, 6)],
    7: [(3, 6), (4, 5)],
}

SU8_SUBSCRIPT_ROWS = [
    [(1, 2), (3, 4), (5, 6), (7, 8)],
    [(1, 3), (2, 4), (5, 7), (6, 8)],
    [(1, 4), (2, 3), (5, 8), (6, 7)],
    [(1, 5), (2, 6), (3, 7), (4, 8)],
]

# beginning rows with 6 and 7 exchanged, interaction row unchanged
SU8_SWAPPED_ROWS = [
    [(1, 2), (3, 4), (5, 7), (6, 8)],
    [(1, 3), (2, 4), (5, 6), (7, 8)],
    [(1, 4), (2, 3), (5, 8), (6, 7)],
    [(1, 5), (2, 6), (3, 7), (4, 8)],
]

SU4_SUBSCRIPT_ROWS = [[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)]]
