# Helix EWL Game
# 四螺旋资助权重、EWL 量子博弈与 Dirac–Solow–Swan 轨迹
