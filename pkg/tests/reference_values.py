"""Printed reference values used by several test modules."""

# critical points of the alpha = -1/2, n = 200 Laguerre step expansion
X_PLUS_200 = (
    "1.23468886080318246205175640076637647798323949845707164146855"
    "181967104846688402531629527949568958184725501099221878799937"
    "065607066281702792065904979826237243575329891028544691448117"
    "4201139582708536428948881791368482448438408329248865333917731"
    "41854062545324039789475636307588151666472440252073636724439"
)
X_MINUS_200 = (
    "0.7900542198210110735737933107310435096052638050001253395683377"
    "0261682371463909575893541126569621731715791818914620650296428"
    "3864217580809768632697488288862041562201358460410751672195826"
    "5866620088384634191041289583048943312518954134983229273045299"
    "31039866409623037748110975121280531459368332355928748953"
)

# partial sum of the alpha Laguerre step expansion at x = 1, ten printed digits
VALUE_AT_1 = {
    (0, 100): "0.4973032559",
    (0, 1000): "0.4994002364",
    (1, 100): "0.5039460855",
    (1, 1000): "0.5004991579",
    (2, 100): "0.5256199161",
    (2, 1000): "0.5096998025",
}
