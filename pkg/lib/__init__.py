# HyperQ library: projective twistor geometry of Q^{2,2}
