from sympolar.cli import main

main()
