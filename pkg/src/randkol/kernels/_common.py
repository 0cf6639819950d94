KIND_PERIODIC = 0
KIND_IID = 1
KIND_MARKOV = 2
KIND_SELFREF = 3

MODE_IID = 0
MODE_MARKOV = 1
