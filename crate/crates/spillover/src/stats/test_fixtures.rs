//! Frozen series shared by the regression-test fixtures: a seeded random
//! walk and a noisy linear function of it.

/// Random-walk levels, T = 160.
pub(crate) const RW_X: [f64; 160] = [
    5.4839825277, 5.4302897104, 5.8970761394, 6.0993510386, 5.4107059063, 3.9329213782, 5.1254911292, 4.9765798591,
    3.3608061810, 2.1514790018, 2.3009470280, 2.8801766283, 2.5780534204, 4.4401527072, 4.3282302000, 3.0939325960,
    3.3261346525, 2.1992076279, 2.4335481117, 3.7491197369, 3.8756453492, 5.0661400180, 4.6908015993, 5.6006629321,
    5.1958058841, 6.8228273924, 7.6548332022, 7.4033145056, 7.0120908294, 7.4578302866, 8.3491082294, 7.1744171747,
    7.0719423989, 5.8438493034, 5.3629447175, 6.6673175156, 7.0092598996, 7.8984488946, 7.2584310797, 6.7315502179,
    8.1487669027, 7.5585310354, 8.1396077558, 9.3498039518, 8.4541564266, 9.5947089852, 11.5938201495, 12.2184079407,
    13.5735680948, 12.6197660232, 12.9762044754, 13.8329736488, 13.9174458330, 13.6478118358, 13.6899514121, 13.7064377222,
    13.5503116870, 14.1091442635, 15.0838048470, 14.0524207553, 15.4990127674, 14.3889373780, 14.1487971335, 14.8146560167,
    15.2208675751, 16.3471588932, 17.6875675294, 18.3352816508, 18.0061479156, 20.7163273755, 20.6844970039, 21.9028396458,
    22.2226197823, 22.9709279611, 21.7955308103, 21.5580104153, 23.0972370122, 22.4201422541, 22.0306216890, 23.2046905221,
    23.1416482348, 23.1963775376, 23.0826966111, 23.9180091567, 24.6906852850, 25.7082545350, 26.2271123465, 26.3582345621,
    26.1123915260, 25.8777400711, 27.3775606637, 27.0208634743, 27.2559812068, 26.7683279811, 26.1310601899, 25.8878895576,
    25.1499243511, 26.2980383442, 25.8783387612, 26.9893425068, 26.9947195672, 27.7215596577, 28.0743722186, 27.1619874381,
    27.4861527154, 25.3199215682, 24.4589244777, 24.0008240110, 24.4538425608, 24.2612334082, 25.6977113462, 26.3095865982,
    28.0466065070, 28.7651221467, 28.4349494389, 29.3863150456, 27.5816873445, 26.5257343421, 25.4289345807, 26.2834499756,
    27.4898851840, 27.8165593252, 29.8765232650, 29.0699612805, 27.1255078725, 26.6260487582, 27.9556149410, 30.9667127795,
    30.4714984049, 30.3815838501, 30.5724293867, 31.4063065006, 31.8760729797, 33.2354498299, 33.0216566867, 33.4258842913,
    35.7324870722, 35.7715904808, 35.0635510048, 35.8025046634, 34.5212620854, 35.1006564245, 35.6703735242, 36.4988625939,
    38.5127561496, 39.6997693779, 38.5599812341, 37.7084588547, 36.9268455138, 37.1931024657, 36.6315377085, 36.8055654788,
    37.9520056725, 37.8936137462, 37.3683315424, 37.7368812407, 39.5223997010, 40.6838212983, 39.0985169624, 37.5481083701,
];

/// RW_Y[t] = 2 RW_X[t] + 1 + noise: cointegrated with RW_X.
pub(crate) const RW_Y: [f64; 160] = [
    11.3332043788, 11.1890587705, 12.4642087147, 12.9416068822, 12.0916347782, 8.7740943318, 12.1217704075, 10.6970934022,
    7.8067973455, 4.1578386185, 5.0006172143, 7.7693589477, 6.5802936485, 9.6137770206, 9.7448497841, 6.6990249009,
    7.0640706635, 4.9132732206, 5.7972562408, 9.0254773569, 8.2036426557, 11.0939495246, 9.8476805879, 12.3563906045,
    11.9992165084, 13.6357379408, 16.5319706373, 15.5704774563, 14.1809359949, 15.1465213119, 18.0313876727, 16.3432250665,
    14.4269853527, 11.8146255768, 11.5697076399, 14.4167904886, 14.4062740919, 17.0443488672, 14.8483004210, 14.4378499965,
    17.2702052196, 15.3512856565, 17.6301772937, 19.5540690660, 18.3728506311, 20.4260486649, 24.2717453707, 24.8375699353,
    28.4512843241, 26.1035704800, 26.8748776240, 28.5611039742, 29.5410447950, 29.3613505498, 29.0470676632, 28.6108997541,
    28.2987367357, 29.9253650648, 30.4037878903, 27.9732249176, 32.1080485741, 29.8095709409, 28.6198552888, 30.9134726299,
    31.6821775727, 33.3245804645, 36.0070409935, 35.9077205581, 36.8235335860, 43.8277665621, 41.8394148395, 45.3524187597,
    44.8957456383, 47.7772094633, 45.1870024398, 43.7769624870, 47.0021793761, 46.0293717700, 44.7407676521, 46.9730631026,
    47.3408294046, 48.1728952357, 47.3503308838, 49.1776390071, 50.5051515751, 52.5201900376, 53.1965793365, 53.4294177284,
    52.6977291405, 52.0186609786, 56.1116314029, 54.2340099062, 54.9890716687, 54.9410349549, 54.2693661004, 53.6546210073,
    51.3595567733, 53.5229121116, 52.7305003846, 54.9944103847, 54.7497580556, 56.0114792344, 57.4591157748, 55.5976665445,
    56.6002225638, 51.4599824046, 49.5939762231, 48.6926490915, 50.3270701810, 49.8787329389, 53.0386343419, 54.0178677275,
    57.4117854478, 59.1713140622, 57.8114758221, 59.3069470681, 56.3453898892, 53.8899464030, 51.7164375311, 52.9187443907,
    56.8114016482, 57.3768159972, 60.4910949685, 59.2531532728, 55.7352169613, 54.6196588665, 57.6499603241, 62.8245672942,
    61.5491289749, 61.8290990231, 62.5977127998, 63.0947269170, 64.7547718126, 67.9171041597, 66.3046379850, 67.3996123132,
    72.7153037251, 72.6736242459, 70.5852199879, 72.6689456350, 70.3007714472, 70.9698799896, 71.6866874681, 73.5483806656,
    78.2427700855, 79.8950692768, 77.3031079877, 75.4000927759, 74.3610855976, 76.5218354849, 73.6815310722, 74.6696423746,
    76.7234895151, 77.4778385657, 76.1106471557, 76.4305429870, 80.2113952669, 82.5844749405, 79.4306637315, 76.2364721385,
];
