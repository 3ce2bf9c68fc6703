// Generated by freeze_stats.py (scipy). Do not edit by hand.

#![allow(clippy::approx_constant)]

pub struct WelchCase {
    pub a: &'static [f64],
    pub b: &'static [f64],
    pub t: f64,
    pub df: f64,
    pub p: f64,
    pub d: f64,
}
pub struct SpearmanCase {
    pub x: &'static [f64],
    pub y: &'static [f64],
    pub r: f64,
    pub p: f64,
}

pub const WELCH: [WelchCase; 20] = [
    WelchCase {
        a: &[1.0, 2.0, 3.0, 4.0],
        b: &[3.0, 4.0, 5.0, 6.0],
        t: -2.1908902300206647,
        df: 6.0,
        p: 0.9645061728395062,
        d: -1.5491933384829668,
    },
    WelchCase {
        a: &[
            1.41, -2.69, 3.09, -0.51, -0.74, -1.5, 1.83, 1.4, 2.35, 1.76, 0.7, 0.81, 1.83, -1.22, 0.18, 0.9, -0.5,
            1.47, -0.33, 1.39, 0.5, 1.04, -2.29, -1.19,
        ],
        b: &[0.23, 2.39, 1.95, 0.3, -0.93, 4.46, 1.83, -2.86, 2.13, 1.99, 2.08, -0.44, 3.44],
        t: -1.4028425048018438,
        df: 19.76009076749355,
        p: 0.9119093943605849,
        d: -0.523687618334397,
    },
    WelchCase {
        a: &[4.33, -0.63, 1.95, 2.3, -0.48, 0.32, -0.7, 1.43, 1.93, -0.4, 1.11, -1.09, -0.95, -4.28, -2.5, -1.31, 0.55],
        b: &[0.62, 0.96, -1.4, 0.56, -0.68, -0.28, 3.24, 2.99, 1.81, 1.23, 1.17, -0.81, -1.2, 0.94, -0.11, -0.55, 0.38],
        t: -0.7322642958620229,
        df: 27.806028751506975,
        p: 0.7649325160048738,
        d: -0.25116458138142483,
    },
    WelchCase {
        a: &[
            -0.9, -4.37, 2.45, 3.26, -4.0, 0.24, -1.56, -0.63, -0.77, 2.35, 0.59, -3.35, -0.72, -0.99, -3.15, -0.38,
            -1.01, 2.81, -1.46, 0.27, -7.16,
        ],
        b: &[
            -0.31, 1.53, -3.34, -1.29, -6.51, -2.6, -1.64, -0.85, -1.93, 1.64, -4.04, -3.65, 0.47, -1.51, 2.55, 1.01,
            0.17, -4.67, -2.08, 0.02, -2.14, 0.05,
        ],
        t: 0.6031158597691645,
        df: 39.773486962160554,
        p: 0.2749277978394352,
        d: 0.1845619278429526,
    },
    WelchCase {
        a: &[2.7, 0.39, 0.41, 2.69, 4.63, -6.79, 3.93],
        b: &[
            4.66, 1.26, 5.79, 4.56, 2.6, -0.19, 1.72, -0.87, -0.4, 1.97, 1.14, -0.31, 5.93, 0.0, 1.41, 1.48, -4.41,
            8.53, -0.06, 3.48, -4.3, 1.04,
        ],
        t: -0.2850719980090937,
        df: 8.620074020928167,
        p: 0.6088403981938976,
        d: -0.13891861377186163,
    },
    WelchCase {
        a: &[
            1.34, 0.99, 0.73, -4.22, -2.87, 0.82, 2.61, 0.62, 0.87, 0.82, 1.16, 0.68, -2.79, 1.76, -2.35, -3.59, -0.09,
            -3.29, -2.74, -0.15, -2.17, -2.32, 0.63, 2.06,
        ],
        b: &[
            -2.69, 2.16, 0.65, -0.95, -0.01, -0.19, -1.7, -3.75, 1.52, 1.26, 3.7, 3.27, 1.1, 2.61, 4.17, -0.9, 0.08,
            1.29, -2.4, -1.78, 2.18, -0.3, 1.71,
        ],
        t: -1.5762747936090824,
        df: 44.792843704691286,
        p: 0.9390001302190574,
        d: -0.4601960354805142,
    },
    WelchCase {
        a: &[-1.0, -1.43, -2.23, -2.78, 1.7, -0.8, -0.04, -2.08, -0.64, -0.73, -2.06, 1.01, 0.45, -1.31, 0.05, 0.12],
        b: &[0.38, 0.19, -1.86, -0.43, 0.83],
        t: -0.9951683696773197,
        df: 7.903157453421562,
        p: 0.8254283426769944,
        d: -0.46398363220109684,
    },
    WelchCase {
        a: &[
            1.71, 1.58, 1.68, 1.96, 1.91, 1.12, 2.15, 2.48, 1.76, 2.12, 1.73, 2.39, 1.72, 1.92, 2.43, 2.27, 1.88, 2.36,
            2.18, 2.31,
        ],
        b: &[-2.74, -2.58, 1.44, -1.0, -9.42],
        t: 2.6823435145890953,
        df: 4.014932605425788,
        p: 0.027439053587313245,
        d: 2.8294741422692775,
    },
    WelchCase {
        a: &[1.37, 1.6, 2.28, 0.6, 1.63, 0.78, 1.61, 2.03],
        b: &[
            2.1, 1.01, 1.23, 0.88, 0.19, 0.03, -0.27, 0.39, -1.76, 0.03, 0.34, -0.61, -0.38, 0.65, 0.79, 0.58, -1.22,
            1.66, 0.2, 2.47, 0.33, 0.74, 0.05,
        ],
        t: 3.7944339135649723,
        df: 21.100508163677866,
        p: 0.0005269289954799139,
        d: 1.222111705677085,
    },
    WelchCase {
        a: &[
            1.56, 1.18, -1.44, 1.14, -0.35, 0.98, -0.69, 1.94, -0.2, 2.79, 0.03, 1.41, -1.05, 0.64, -0.41, 1.09, 2.08,
            1.69, -0.26, -0.91, 0.02, -0.76,
        ],
        b: &[-0.13, -3.69, -2.87, -2.85, -0.59, -0.53, -5.04, 1.06, 2.25, -4.32, -2.72, 0.16, -2.51, -1.81, -1.53],
        t: 3.6924430557018018,
        df: 20.34105309831561,
        p: 0.0007051074906820342,
        d: 1.3642399700727008,
    },
    WelchCase {
        a: &[-2.35, -1.86, -1.53, -1.76, -2.82, -1.6, 0.73, -2.98, -5.9, -3.27, -3.45, -4.15, -2.62, -2.99],
        b: &[
            3.6, 1.74, 0.98, -1.04, -0.54, -0.2, 0.7, -1.02, 1.25, 2.46, 1.59, 2.46, 0.78, 1.6, 1.15, 1.78, 2.04,
            -0.18, -0.46, -0.04, 2.15, 1.61, 2.13, 0.15,
        ],
        t: -7.6923491377170485,
        df: 23.07542660791431,
        p: 0.999999959159648,
        d: -2.732093341695813,
    },
    WelchCase {
        a: &[-1.91, 0.05, -0.19, -2.85, -1.36, 1.06, 0.58, 1.15, 0.27, -1.06, 0.58, -1.31, -5.5, -0.1, -4.58],
        b: &[
            1.13, -1.23, 4.62, 1.1, -0.52, -5.66, 1.18, 0.55, 0.42, -0.41, -1.54, 0.41, -2.99, -3.7, 1.87, -2.22,
            -2.05, 0.13, 3.55,
        ],
        t: -0.9556983895815166,
        df: 31.961919996578462,
        p: 0.8268011299503457,
        d: -0.3219431442884809,
    },
    WelchCase {
        a: &[2.72, 3.58, -0.03, 1.41, -2.64, -1.84, -0.53, -0.36, -0.46, 0.56, -0.66],
        b: &[2.73, 2.48, 1.51, 1.26, 2.14, 1.06, 2.06, 1.7, 0.72, 2.87, 2.25, 1.77, 3.13],
        t: -3.0856197180551828,
        df: 12.642278893877652,
        p: 0.9955314792441398,
        d: -1.3473462143934312,
    },
    WelchCase {
        a: &[
            -1.88, -1.75, -1.63, -1.82, -1.9, -2.46, -2.07, -2.11, -2.02, -2.23, -2.1, -2.37, -1.95, -2.41, -1.37,
            -2.1, -1.44, -2.0, -1.93, -1.42, -2.03, -1.29, -2.23,
        ],
        b: &[2.26, 2.05, 1.78],
        t: -25.59476341697217,
        df: 3.0763991951645395,
        p: 0.9999452587979305,
        d: -12.299131217780303,
    },
    WelchCase {
        a: &[-4.71, -1.48, -5.32, 1.44, -0.01, 1.99, -1.5, 1.18, 2.1, -3.64, -2.67, -3.28],
        b: &[1.75, -0.69, 0.78, 0.54],
        t: -2.1024902178795197,
        df: 13.387801227857523,
        p: 0.9725194675662787,
        d: -0.8039225106739097,
    },
    WelchCase {
        a: &[2.35, 0.34, 1.93, -0.76, -0.19, 1.34, 0.17, 0.6, 2.36, 0.7, 1.41, 0.72, 1.42, 1.66, 0.67],
        b: &[-0.82, 3.14, 1.85, 2.57, -1.51, 3.98, 0.51, 0.56, -1.91, 0.52],
        t: 0.13815721558283942,
        df: 11.546832073365442,
        p: 0.44624808187692255,
        d: 0.06474855733785323,
    },
    WelchCase {
        a: &[-1.83, -0.19, -2.49, -2.28, -1.85, -0.26, -1.87, -1.29, -1.8, -2.25],
        b: &[
            -1.29, 0.56, -2.63, -0.8, 1.72, 0.24, 1.41, 2.06, 1.45, 1.03, 1.51, 0.74, 0.1, 1.56, 1.16, 0.83, 2.67,
            1.07, 3.8, -1.14, 1.99, 0.7, 1.96,
        ],
        t: -6.502898638596101,
        df: 28.28259930241233,
        p: 0.9999997720566619,
        d: -2.0031630950707227,
    },
    WelchCase {
        a: &[0.57, -0.88, -0.06, -0.99, -0.04, -2.06, -1.56, -1.86, 1.09, 0.2, -1.98, -0.42, 1.52, -0.32],
        b: &[
            2.28, 4.04, 0.6, -1.72, 2.55, 1.45, -0.98, -0.78, 1.04, -0.96, -0.42, 2.74, 3.56, 2.71, 0.34, 2.55, -0.51,
            3.14, 1.09,
        ],
        t: -3.336464666934789,
        df: 30.57001511807075,
        p: 0.9988807658437843,
        d: -1.101803764345895,
    },
    WelchCase {
        a: &[0.06, 1.0, -0.7, -0.63, -0.98, 0.21, -0.88, -0.14, 0.1, 0.95],
        b: &[1.31, 3.18, -0.04, -0.54, -1.22, 1.21, -0.69],
        t: -0.9016066800378927,
        df: 7.807473303027117,
        p: 0.8028859538135737,
        d: -0.5028104595177563,
    },
    WelchCase {
        a: &[
            0.64, 0.14, -1.47, 0.29, -0.5, 1.65, 2.2, 1.11, 1.56, 0.96, -2.84, -1.14, 0.3, -0.14, 1.43, -0.83, 2.37,
            -0.75, -2.13, 0.82, -0.7, -0.16, 2.74, 0.89,
        ],
        b: &[
            -1.15, -0.61, -0.65, 0.4, -0.3, 0.05, -0.1, -0.62, 0.84, 0.91, 0.66, 0.88, -0.59, 0.25, 0.63, 0.79, -1.18,
            -0.91, 0.53, -0.8, -0.82, -0.62, 0.55, 0.11,
        ],
        t: 1.0611791130067658,
        df: 33.72723098399468,
        p: 0.14807432997842487,
        d: 0.30633602327643233,
    },
];

pub const SPEARMAN: [SpearmanCase; 20] = [
    SpearmanCase {
        x: &[
            -0.079, 1.023, -0.956, -0.419, -1.938, 0.642, 0.372, -1.968, -0.319, -2.677, -0.6, 0.416, -1.804, -1.561,
            0.352, -1.016, -0.391, 0.555, 1.579, -0.614, 0.643, 2.095,
        ],
        y: &[
            0.294, 0.554, -1.481, 0.65, -1.369, 1.376, 1.801, -1.698, -0.064, -1.406, 0.206, 0.416, -2.371, -1.069,
            0.252, -0.614, -1.178, -0.508, 1.581, -2.598, 0.904, 1.036,
        ],
        r: 0.8238283455674761,
        p: 2.4571574988633076e-06,
    },
    SpearmanCase {
        x: &[3.0, 1.0, 4.0, 0.0, 4.0, 3.0, 3.0, 2.0, 3.0, 0.0, 3.0, 0.0, 4.0, 4.0, 4.0, 2.0, 2.0],
        y: &[1.0, 0.0, 2.0, 0.0, 6.0, 5.0, 4.0, 4.0, 2.0, 1.0, 5.0, -2.0, 6.0, 6.0, 5.0, 3.0, 0.0],
        r: 0.7943121004762316,
        p: 0.00013996575948676065,
    },
    SpearmanCase {
        x: &[
            -1.384, -0.654, 0.01, 0.344, 0.753, 0.858, 0.192, 1.171, -1.964, 0.012, -0.898, -0.24, 1.178, -0.895,
            0.754, -0.783, 0.34, -1.055, 0.493, 1.878, 0.572, -0.708,
        ],
        y: &[
            -0.992, -0.086, 0.363, 0.452, -0.375, 1.376, -1.451, 0.389, -1.041, 0.72, -1.397, 0.433, 2.432, -1.21,
            1.108, -0.655, 1.591, -2.216, -0.254, -0.124, -1.356, 0.773,
        ],
        r: 0.5268210050818747,
        p: 0.011765958727072846,
    },
    SpearmanCase {
        x: &[
            3.0, 0.0, 1.0, 1.0, 1.0, 2.0, 4.0, 4.0, 1.0, 3.0, 1.0, 1.0, 0.0, 4.0, 4.0, 0.0, 1.0, 2.0, 0.0, 2.0, 0.0,
            1.0, 3.0, 2.0, 2.0,
        ],
        y: &[
            5.0, -2.0, 0.0, 2.0, 2.0, 4.0, 5.0, 3.0, -1.0, 5.0, -1.0, 1.0, 0.0, 5.0, 5.0, 0.0, 3.0, 1.0, 0.0, 4.0, 2.0,
            3.0, 2.0, 0.0, 1.0,
        ],
        r: 0.7217990791006755,
        p: 4.6457678779733605e-05,
    },
    SpearmanCase {
        x: &[0.606, -1.221, 0.964, 0.015, -0.345],
        y: &[2.558, -0.948, -0.007, 0.212, 0.448],
        r: 0.3,
        p: 0.6238376647810728,
    },
    SpearmanCase {
        x: &[1.0, 3.0, 0.0, 4.0, 3.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0],
        y: &[3.0, 4.0, -1.0, 5.0, 3.0, 1.0, -1.0, -1.0, 2.0, 1.0, 1.0],
        r: 0.6285671082323556,
        p: 0.03832402523138256,
    },
    SpearmanCase {
        x: &[
            0.096, -0.348, -0.186, -0.651, -1.22, -0.114, 0.112, -1.033, 0.052, -0.925, 1.203, 2.909, -0.446, 1.687,
            -1.004, -0.314, -3.058,
        ],
        y: &[
            -0.595, 0.378, -1.041, 0.231, -0.396, 0.413, 0.228, -1.088, 0.626, 0.166, -0.726, 2.181, -1.927, 2.281,
            -1.945, -0.466, -1.462,
        ],
        r: 0.5759803921568628,
        p: 0.01553176561917017,
    },
    SpearmanCase {
        x: &[
            1.0, 4.0, 2.0, 2.0, 2.0, 0.0, 0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 2.0, 1.0, 3.0, 3.0, 1.0, 4.0, 3.0, 3.0, 4.0,
            4.0, 3.0, 2.0, 2.0, 0.0,
        ],
        y: &[
            1.0, 6.0, 3.0, 0.0, 3.0, 0.0, -2.0, 1.0, 1.0, 2.0, 4.0, 1.0, 1.0, -1.0, 2.0, 1.0, -1.0, 5.0, 3.0, 1.0, 4.0,
            5.0, 2.0, 0.0, 4.0, 1.0,
        ],
        r: 0.7227011269667396,
        p: 3.0482342784470317e-05,
    },
    SpearmanCase {
        x: &[
            -0.727, -0.424, 0.948, -0.695, 1.071, 1.637, 0.643, 0.287, -0.365, 1.107, 0.636, -0.853, -0.655, 0.834,
            -0.014, 2.072, 0.197, -0.475, 1.568, 0.722, 0.012, 0.162, -0.221, -0.113, -0.16, 1.268, -0.597, 0.168,
            -1.054,
        ],
        y: &[
            1.601, 0.105, -1.15, -2.24, -0.179, 2.889, 0.561, -0.332, 0.903, 1.554, -0.018, -0.329, -1.305, -0.875,
            -0.967, 2.735, -0.864, 0.993, -1.113, -1.265, 1.218, -0.193, -0.502, 1.818, 0.493, 0.756, 0.358, -1.042,
            -1.14,
        ],
        r: 0.180295566502463,
        p: 0.3493174290775386,
    },
    SpearmanCase {
        x: &[1.0, 4.0, 3.0, 2.0, 2.0, 3.0, 3.0, 4.0, 0.0, 4.0],
        y: &[3.0, 2.0, 2.0, 4.0, 4.0, 3.0, 1.0, 4.0, -2.0, 6.0],
        r: 0.3174747157331081,
        p: 0.3713890378597881,
    },
    SpearmanCase {
        x: &[-0.536, -1.585, -0.248, -0.021, 0.141, -0.603, 0.325, -0.276, 1.585, -0.192],
        y: &[-0.028, -0.634, -0.64, 0.466, 1.496, 1.267, -0.447, -0.799, 0.824, 0.007],
        r: 0.34545454545454546,
        p: 0.32822651147136733,
    },
    SpearmanCase {
        x: &[
            0.0, 2.0, 1.0, 1.0, 3.0, 0.0, 4.0, 1.0, 3.0, 0.0, 1.0, 1.0, 3.0, 2.0, 3.0, 2.0, 4.0, 3.0, 4.0, 4.0, 2.0,
            1.0, 3.0, 4.0,
        ],
        y: &[
            -2.0, 3.0, 2.0, 3.0, 1.0, 2.0, 5.0, 2.0, 5.0, 1.0, -1.0, -1.0, 2.0, 2.0, 3.0, 2.0, 4.0, 1.0, 3.0, 4.0, 4.0,
            3.0, 1.0, 5.0,
        ],
        r: 0.5875304817018807,
        p: 0.0025375927844500054,
    },
    SpearmanCase {
        x: &[-1.84, -0.173, 0.438, 0.012, -0.903, -1.907, 0.719, -0.049, -0.734, 0.72, 0.734],
        y: &[-2.406, 0.559, 2.162, 1.42, -0.759, -2.473, 0.164, 2.099, 1.13, -1.397, 2.694],
        r: 0.5909090909090909,
        p: 0.05557560428877463,
    },
    SpearmanCase {
        x: &[1.0, 0.0, 2.0, 4.0, 4.0, 0.0, 3.0],
        y: &[-1.0, 2.0, 0.0, 3.0, 5.0, 1.0, 2.0],
        r: 0.6330541649476574,
        p: 0.12699213528085754,
    },
    SpearmanCase {
        x: &[
            -0.717, -0.288, -0.2, -1.113, -0.233, 1.157, 0.447, -0.77, -0.123, -0.15, -0.205, -1.269, -0.267, 0.294,
            -1.006, -2.16, 0.959, 0.406, 1.131, 1.925, 1.691, 0.034,
        ],
        y: &[
            0.237, -0.417, 0.084, -0.328, 0.501, 0.349, 0.843, -1.254, -1.599, -0.289, 0.796, -1.54, -1.266, 1.686,
            -1.141, -1.5, 1.491, 0.449, 2.153, 0.979, 0.6, 0.872,
        ],
        r: 0.7334839073969509,
        p: 0.00010265503512007892,
    },
    SpearmanCase {
        x: &[1.0, 0.0, 0.0, 2.0, 4.0, 2.0, 1.0, 2.0, 3.0],
        y: &[3.0, 2.0, 0.0, 3.0, 3.0, 3.0, -1.0, 3.0, 1.0],
        r: 0.468292905790847,
        p: 0.20359786726433007,
    },
    SpearmanCase {
        x: &[1.339, -0.282, 1.074, -0.665, -0.319, 1.215, -1.25, -1.74, -1.132, 0.389, -0.98, -0.147],
        y: &[1.75, 0.093, 0.034, 1.268, 0.953, 1.966, -0.495, -0.732, -1.189, 1.04, 0.139, 0.174],
        r: 0.7132867132867133,
        p: 0.009201779777634755,
    },
    SpearmanCase {
        x: &[0.0, 2.0, 0.0, 0.0, 4.0, 0.0, 0.0, 2.0, 0.0, 1.0, 1.0, 4.0, 2.0, 2.0, 3.0, 3.0, 4.0, 0.0, 0.0, 2.0],
        y: &[1.0, 2.0, -2.0, 1.0, 2.0, -2.0, 2.0, 0.0, -2.0, 2.0, 2.0, 2.0, 0.0, 3.0, 1.0, 5.0, 4.0, 2.0, -2.0, 3.0],
        r: 0.5811821410458652,
        p: 0.007199341638460726,
    },
    SpearmanCase {
        x: &[1.052, 2.336, -1.021, -0.619, -1.376, 1.841, 0.387, 0.434, -0.022],
        y: &[0.345, -0.551, -1.378, -0.274, -0.964, 2.338, 1.284, -0.397, -0.229],
        r: 0.5,
        p: 0.17047066078705375,
    },
    SpearmanCase {
        x: &[1.0, 4.0, 3.0, 4.0, 2.0, 3.0, 2.0, 1.0, 4.0, 0.0, 0.0, 4.0, 1.0, 0.0],
        y: &[0.0, 3.0, 2.0, 5.0, 2.0, 2.0, 1.0, 3.0, 4.0, 0.0, -1.0, 5.0, 2.0, -2.0],
        r: 0.8574959583965739,
        p: 8.830822986991292e-05,
    },
];
