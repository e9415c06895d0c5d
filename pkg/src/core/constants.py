"""數值容差表。所有比較門檻都集中在此。"""

# 符號運算：係數修剪門檻
PRUNE_TOL = 1e-12

# 構造性恆等式（正規化、正交性、W 係數平方和、收縮殘差）
CONSTRUCTION_TOL = 1e-12

# 投影算子代數（PQP = μP）、POVM 完備性與正定性
PROJECTOR_TOL = 1e-10

# 稠密驗證（特徵值、POVM 冪等、顯式 O_k 對照、閘層級定理檢查）
VERIFY_TOL = 1e-9

# 輸入矩陣的 Hermitian 判定
HERMITIAN_TOL = 1e-10

# 期望值虛部上限
IMAG_TOL = 1e-10

# 電路么正性與 MCRY 展開等價
UNITARY_TOL = 1e-10

# Jacobi 收斂：非對角 Frobenius 平方質量（相對於 max(1, ‖H‖_F²)）
JACOBI_OFF_TOL = 1e-22

# Jacobi 迭代預算（sweep 數）
JACOBI_MAX_SWEEPS = 60

# 預設路徑使用 Jacobi 的最大維度（n ≤ 7）；更大的矩陣改用 LAPACK
JACOBI_DIM_LIMIT = 64
