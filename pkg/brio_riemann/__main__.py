from brio_riemann.main import main

main()
