//! Reference values computed at 40 significant digits with mpmath.
#![allow(dead_code)]

// (x, gamma or 0 if overflow, ln_gamma, digamma) at 40 digits
pub const SPECIAL_ORACLE: [(f64, f64, f64, f64); 46] = [
    (9.99999999999999955e-07, 9.99999422785324161e+05, 1.38155099807494324e+01, -1.00000057721402007e+06),
    (1.00000000000000002e-03, 9.99423772484595474e+02, 6.90717888538385338e+00, -1.00057557193181026e+03),
    (3.12500000000000000e-02, 3.14528351770760608e+01, 3.44848912779795835e+00, -3.25269532886061157e+01),
    (1.00000000000000006e-01, 9.51350769866873058e+00, 2.25271265173420598e+00, -1.04237549404110759e+01),
    (2.50000000000000000e-01, 3.62560990822190821e+00, 1.28802252469807743e+00, -4.22745353337626550e+00),
    (5.00000000000000000e-01, 1.77245385090551610e+00, 5.72364942924700082e-01, -1.96351002602142355e+00),
    (7.50000000000000000e-01, 1.22541670246517764e+00, 2.03280951431295376e-01, -1.08586087978647217e+00),
    (9.00000000000000022e-01, 1.06862870211931926e+00, 6.63762397347429506e-02, -7.54926949947051340e-01),
    (9.89999999999999991e-01, 1.00587197964410779e+00, 5.85480676470978133e-03, -5.93786304055595182e-01),
    (1.00000000100000008e+00, 9.99999999422784280e-01, -5.77215711838103905e-10, -5.77215663256598677e-01),
    (1.01000000000000001e+00, 9.94325851191506072e-01, -5.69030794606965092e-03, -5.60885457868674497e-01),
    (1.10000000000000009e+00, 9.51350769866873169e-01, -4.98724412598397643e-02, -4.23754940411076642e-01),
    (1.25000000000000000e+00, 9.06402477055477052e-01, -9.82718364218131551e-02, -2.27453533376265421e-01),
    (1.30000000000000004e+00, 8.97470696306277183e-01, -1.08174809507860473e-01, -1.69190888866799616e-01),
    (1.39999999999999991e+00, 8.87263817503075258e-01, -1.19612914172371299e-01, -6.13845445851162394e-02),
    (1.46160000000000001e+00, 8.85603194853648024e-01, -1.21486290035897324e-01, -3.11062512303416483e-05),
    (1.46999999999999997e+00, 8.85633121687460445e-01, -1.21452498007656007e-01, 8.06648901136486872e-03),
    (1.50000000000000000e+00, 8.86226925452758052e-01, -1.20782237635245218e-01, 3.64899739785765204e-02),
    (1.60000000000000009e+00, 8.93515349287690275e-01, -1.12591765696755775e-01, 1.26047452773476315e-01),
    (1.75000000000000000e+00, 9.19062526848883232e-01, -8.44011210204855533e-02, 2.47472453546861176e-01),
    (1.89999999999999991e+00, 9.61765831907387403e-01, -3.89842759230833585e-02, 3.56184161164059654e-01),
    (1.98999999999999999e+00, 9.95813259847666665e-01, -4.19552908879166839e-03, 4.16314706045414928e-01),
    (2.00000000999999994e+00, 1.00000000422784341e+00, 4.22784335753677879e-09, 4.22784341547807752e-01),
    (2.04999999999999982e+00, 1.02217947884091442e+00, 2.19370916671717542e-02, 4.54535961081081907e-01),
    (2.29999999999999982e+00, 1.16671190519816026e+00, 1.54189454959630462e-01, 6.00039880363969491e-01),
    (2.50000000000000000e+00, 1.32934038817913702e+00, 2.84682870472919181e-01, 7.03156640645243192e-01),
    (3.00000000000000000e+00, 2.00000000000000000e+00, 6.93147180559945286e-01, 9.22784335098467134e-01),
    (3.70000000000000018e+00, 4.17065178379660395e+00, 1.42807232666538808e+00, 1.16715353936151134e+00),
    (5.50000000000000000e+00, 5.23427777845535189e+01, 3.95781396761871651e+00, 1.61109314858175123e+00),
    (7.25000000000000000e+00, 1.15538101391998975e+03, 7.05218545073853953e+00, 1.91045352688373593e+00),
    (9.99000000000000021e+00, 3.54802017019831110e+05, 1.27793152143501931e+01, 2.25070037283120117e+00),
    (1.00000000000000000e+01, 3.62880000000000000e+05, 1.28018274800814691e+01, 2.25175258906672093e+00),
    (1.25000000000000000e+01, 1.36843365465565860e+08, 1.87343475119364449e+01, 2.48519565127491227e+00),
    (2.03000000000000007e+01, 2.97246107523557248e+17, 4.02333368354372425e+01, 2.98578817199371960e+00),
    (3.32999999999999972e+01, 7.48757759652263294e+35, 8.26037235816549469e+01, 3.49046723852024288e+00),
    (4.78999999999999986e+01, 1.75809821682571281e+59, 1.36416753152852635e+02, 3.85864077248052384e+00),
    (6.40000000000000000e+01, 1.98260831540444008e+87, 2.01009316399281516e+02, 4.15105023880423651e+00),
    (8.90999999999999943e+01, 2.90417216719669786e+134, 3.09612550842632061e+02, 4.48413716537538676e+00),
    (1.00500000000000000e+02, 9.32096310408271621e+156, 3.61435540467777628e+02, 4.60517435258184538e+00),
    (1.20250000000000000e+02, 1.84360715625514050e+197, 4.54220987383358192e+02, 4.78540914186819411e+00),
    (1.50500000000000000e+02, 4.66107262709737824e+261, 6.02513954870585394e+02, 5.01063714593370424e+00),
    (1.70199999999999989e+02, 1.19184111663666960e+305, 7.02463952631530788e+02, 5.13403361908660205e+00),
    (1.71500000000000000e+02, 9.48336756682479901e+307, 7.09143163030928235e+02, 5.14166498143399942e+00),
    (1.85000000000000000e+02, 0.0, 7.79075038710167291e+02, 5.21765068751543648e+00),
    (1.99900000000000006e+02, 0.0, 8.57404113364328282e+02, 5.29531390546803049e+00),
    (2.00000000000000000e+02, 0.0, 8.57933669825857464e+02, 5.29581528321991168e+00),
];

// (n, s, S_{n,s}, gamma_0, gamma_1, gamma_7, gamma_250)
pub const CONSTANT_ORACLE: [(usize, f64, f64, f64, f64, f64, f64); 10] = [
    (1, 2.50000000000000000e-01, 1.18034059901609623e+00, 2.95867511918863890e+00, 9.86225039729546338e-01, 3.77844348138530128e-01, 6.32455373920207953e-02),
    (2, 5.00000000000000000e-01, 5.64189583547756279e-01, 2.00000000000000000e+00, 6.66666666666666630e-01, 1.33333333333333331e-01, 3.99201596806387192e-03),
    (2, 2.99999999999999989e-01, 6.76877330603511296e-01, 1.44634843008241720e+00, 7.78803000813609203e-01, 2.98428318233909196e-01, 3.63676510353864169e-02),
    (3, 1.00000000000000000e+00, 1.82551571487180986e-01, 1.33333333333333326e+00, 2.66666666666666663e-01, 1.56862745098039214e-02, 1.58728269107907462e-05),
    (3, 9.00000000000000022e-01, 2.00249811224176538e-01, 1.19886411253136149e+00, 2.99716028132840373e-01, 2.37453874964809915e-02, 4.79279065104238654e-05),
    (4, 7.50000000000000000e-01, 1.65324530116963853e-01, 5.63557165559740780e-01, 2.56162347981700345e-01, 4.03962621051331752e-02, 2.50722640140800274e-04),
    (5, 2.20000000000000018e+00, 9.44099359987132618e-03, 1.93862302764213512e-01, 1.23741895381412805e-02, 6.60194069314761519e-05, 2.71556773897206029e-11),
    (8, 3.89999999999999991e+00, 8.46080675393524748e-05, 2.30758624514567972e-03, 2.92099524701985043e-05, 1.30192276417913338e-08, 1.77461163679525576e-19),
    (6, 1.00000000000000002e-02, 9.70330966995830879e-01, 9.81713627026322366e-01, 9.75190612893257147e-01, 9.55963976526768455e-01, 8.95271514963762893e-01),
    (7, 1.69999999999999996e+00, 5.27298328974361817e-03, 2.85892634591446565e-02, 9.89628350508853574e-03, 4.04149869137328699e-04, 6.75150165290182880e-09),
];
// (n, lambda, hls, sphere hls)
pub const HLS_ORACLE: [(usize, f64, f64, f64); 6] = [
    (2, 1.00000000000000000e+00, 3.54490770181103221e+00, 1.00000000000000000e+00),
    (3, 5.00000000000000000e-01, 1.47841487482342204e+00, 8.99307123059882807e-01),
    (3, 2.89999999999999991e+00, 1.18353352290440242e+02, 6.62259932568518117e+00),
    (5, 1.30000000000000004e+00, 1.78783564967279629e+00, 7.32066767342779201e-01),
    (8, 7.00000000000000000e+00, 1.94307761593936590e+01, 1.00000000000000000e+00),
    (1, 5.00000000000000000e-01, 2.95867511918863890e+00, 1.18034059901609623e+00),
];
// (n, A(n))
pub const LOG_MEAN_ORACLE: [(usize, f64); 8] = [
    (1, 0.00000000000000000e+00),
    (2, 3.86294361119890628e-01),
    (3, 5.00000000000000000e-01),
    (4, 5.52961027786557313e-01),
    (5, 5.83333333333333370e-01),
    (6, 6.02961027786557247e-01),
    (7, 6.16666666666666696e-01),
    (8, 6.26770551596081082e-01),
];
// (sigma, zeta, dirichlet beta)
pub const ZETA_ORACLE: [(f64, f64, f64); 11] = [
    (-9.00000000000000022e-01, -1.01193503985351888e-01, 5.78875044227634208e-02),
    (-5.00000000000000000e-01, -2.07886224977354567e-01, 2.75179741228820274e-01),
    (-1.00000000000000006e-01, -4.17228040767366859e-01, 4.59672764603491268e-01),
    (0.00000000000000000e+00, -5.00000000000000000e-01, 5.00000000000000000e-01),
    (2.00000000000000011e-01, -7.33920924896340643e-01, 5.73710847185946671e-01),
    (5.00000000000000000e-01, -1.46035450880958684e+00, 6.67691457189609205e-01),
    (7.50000000000000000e-01, -3.44128538694522268e+00, 7.32107217627397167e-01),
    (9.98999999999999999e-01, -9.99422857155787938e+02, 7.85205184993974736e-01),
    (1.50000000000000000e+00, 2.61237534868548815e+00, 8.64502653461202031e-01),
    (2.00000000000000000e+00, 1.64493406684822641e+00, 9.15965594177219011e-01),
    (3.29999999999999982e+00, 1.15194479472077371e+00, 9.77146910801130919e-01),
];
